// relchar-verify: configuration-driven verification driver.
//
// Subcommands:
//   verify-main     three-way comparison (brute force / closed table /
//                   hyperbola integral) over the tau grid of one pair or an
//                   enumerated family
//   verify-factors  epsilon unitarity, Gauss sums, Tate twist law, GL(1)
//                   functional equation, GL(2) gamma shifts
//   verify-opcalc   operator-ordering, star-product, wavepacket and
//                   microlocalization properties
//   sweep           verify-main over all pairs in the configured ranges
//   corpus          re-run the checked-in cases and compare byte-exactly
//
// Reports: <out>.ndjson (one JSON record per line) and <out>.csv.
// Exit codes: 0 all pass, 1 any failure, 2 bad configuration.
// RELCHAR_THREADS sets the worker count (default 1; corpus always runs
// sequentially).

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "relchar/verify.hpp"

namespace fs = std::filesystem;
using rc::njson;

namespace {

njson load_config(const std::string& path) {
  if (path.empty()) return njson::object();
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  return njson::parse(in);
}

int emit(const rc::Report& rep, const std::string& out) {
  if (out == "-") {
    std::cout << rep.ndjson();
  } else {
    std::ofstream(out + ".ndjson") << rep.ndjson();
    std::ofstream(out + ".csv") << rep.csv();
    std::cout << "records=" << rep.records.size() << " pass=" << rep.n_pass
              << " fail=" << rep.n_fail << " -> " << out << ".ndjson " << out << ".csv\n";
  }
  return rep.n_fail > 0 ? 1 : 0;
}

int run_subcommand(const std::string& cmd, njson config) {
  config["cmd"] = cmd;
  rc::Report rep = rc::run_config(config, rc::env_threads());
  return emit(rep, config.value("out", "report"));
}

int run_corpus(const std::string& dir, bool regen) {
  std::vector<fs::path> cases;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_directory()) cases.push_back(e.path());
  std::sort(cases.begin(), cases.end());
  if (cases.empty()) {
    std::cerr << "corpus: no cases under " << dir << "\n";
    return 2;
  }
  int fails = 0;
  for (const fs::path& c : cases) {
    njson config = load_config((c / "config.json").string());
    std::string got = rc::corpus_render(config);
    fs::path exp = c / "expected.ndjson";
    if (regen) {
      std::ofstream(exp) << got;
      std::cout << "case " << c.filename().string() << ": regenerated ("
                << got.size() << " bytes)\n";
      continue;
    }
    std::ifstream in(exp, std::ios::binary);
    if (!in) {
      std::cerr << "case " << c.filename().string() << ": missing expected file\n";
      return 2;
    }
    std::string want((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    bool ok = (got == want);
    std::cout << "case " << c.filename().string() << ": "
              << (ok ? "PASS (bit-exact)" : "FAIL (report differs)") << "\n";
    fails += ok ? 0 : 1;
  }
  return fails > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relative-character verification laboratory"};
  app.require_subcommand(1);

  std::string config_path, out, kase, corpus_dir = "cases";
  int p = 0, N = -1;
  double tol = 0;
  bool regen = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON job configuration");
    sub->add_option("--p", p, "residue characteristic override");
    sub->add_option("--out", out, "report basename ('-' prints NDJSON to stdout)");
  };
  CLI::App* vm = app.add_subcommand("verify-main", "three-way main-identity comparison");
  add_common(vm);
  vm->add_option("--N", N, "fix the scale exponent N");
  vm->add_option("--case", kase, "pair kind: ps | sc-unram | sc-ram");
  vm->add_option("--tol", tol, "comparison tolerance");
  CLI::App* vf = app.add_subcommand("verify-factors", "local-factor suites");
  add_common(vf);
  CLI::App* vo = app.add_subcommand("verify-opcalc", "operator-calculus suites");
  add_common(vo);
  CLI::App* sw = app.add_subcommand("sweep", "verify-main over enumerated pairs");
  add_common(sw);
  sw->add_option("--N", N, "fix the scale exponent N");
  sw->add_option("--case", kase, "pair kind: ps | sc-unram | sc-ram");
  sw->add_option("--tol", tol, "comparison tolerance");
  CLI::App* co = app.add_subcommand("corpus", "run the regression corpus");
  co->add_option("--dir", corpus_dir, "corpus directory");
  co->add_flag("--regen", regen, "rewrite the expected reports");

  CLI11_PARSE(app, argc, argv);

  try {
    if (co->parsed()) return run_corpus(corpus_dir, regen);
    njson config = load_config(config_path);
    if (p > 0) config["p"] = p;
    if (N >= 0) config["N"] = N;
    if (!kase.empty()) config["kind"] = kase;
    if (tol > 0) config["tol"] = tol;
    if (!out.empty()) config["out"] = out;
    for (CLI::App* sub : {vm, vf, vo, sw})
      if (sub->parsed()) return run_subcommand(sub->get_name(), std::move(config));
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
