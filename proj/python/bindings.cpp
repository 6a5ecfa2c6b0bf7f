// Python bindings for the verification laboratory: pair enumeration, the
// three evaluation routes (brute force, closed-form table, hyperbola
// integral), the job-config driver, and the GL(1) epsilon factor.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relchar/phase.hpp"
#include "relchar/verify.hpp"

namespace py = pybind11;
using namespace rc;

namespace {

using TauSpec = std::optional<std::pair<int, long long>>;  // (t, u): u * p^{-t}

LocalElt tau_from(int p, const TauSpec& t) {
  if (!t) return LocalElt::zero_elt(p);
  auto [d, u] = *t;
  if (d < 1) throw std::invalid_argument("tau depth must be >= 1");
  return LocalElt::make(p, -d, u, d + 1);
}

// the grid convention: tau_x centered on alpha_chi, tau_y/tau_z as given
Wavepacket packet(const PairData& pd, int N, const TauSpec& ty, const TauSpec& tz) {
  int p = pd.chi.R->p;
  Wavepacket a;
  a.N = N;
  a.tau_x = le_shift(pd.alpha_chi.alpha, N);
  a.tau_y = tau_from(p, ty);
  a.tau_z = tau_from(p, tz);
  return a;
}

RingKind kind_from(const std::string& ext) {
  if (ext == "base") return RingKind::Base;
  if (ext == "unram") return RingKind::Unram;
  if (ext == "ram") return RingKind::Ram;
  throw std::invalid_argument("ext must be base|unram|ram");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Relative-character verification core: enumerate (representation, "
      "character) pairs and evaluate H(a) by operator composition, by the "
      "closed-form table, and by the phase-space hyperbola integral.";

  py::class_<PairCase>(m, "Pair")
      .def_readonly("kind", &PairCase::kind)
      .def_readonly("id", &PairCase::id)
      .def_property_readonly("p", [](const PairCase& pc) { return pc.pd.chi.R->p; })
      .def_property_readonly("c_chi", [](const PairCase& pc) { return pc.pd.c_chi; })
      .def_property_readonly("c_pair", [](const PairCase& pc) { return pc.pd.c_pair; })
      .def_property_readonly("tau_bound",
                             [](const PairCase& pc) { return pc.pd.tau_bound; })
      .def_property_readonly("gamma_half",
                             [](const PairCase& pc) { return pc.pd.gamma_half; })
      .def(
          "bruteforce",
          [](const PairCase& pc, int N, const TauSpec& ty, const TauSpec& tz) {
            BruteResult b = relchar_bruteforce(pc.pd, packet(pc.pd, N, ty, tz));
            return py::make_tuple(b.H, b.H_stab);
          },
          py::arg("N"), py::arg("tau_y") = py::none(), py::arg("tau_z") = py::none(),
          "operator-composition value at R and at R+2 (must agree exactly)")
      .def(
          "table",
          [](const PairCase& pc, int N, const TauSpec& ty, const TauSpec& tz) {
            TableResult t = relchar_table(pc.pd, packet(pc.pd, N, ty, tz));
            py::dict d;
            d["cell"] = t.cell.str();
            d["window"] = t.window;
            d["value"] = t.value;
            return d;
          },
          py::arg("N"), py::arg("tau_y") = py::none(), py::arg("tau_z") = py::none(),
          "closed-form table cell (printed value) times the tau_x window")
      .def(
          "integral_closed",
          [](const PairCase& pc, int N, const TauSpec& ty, const TauSpec& tz) {
            HypResult h = hyp_integral_closed(pc.pd, packet(pc.pd, N, ty, tz));
            py::dict d;
            d["value"] = h.total().str();
            d["window"] = h.window;
            return d;
          },
          py::arg("N"), py::arg("tau_y") = py::none(), py::arg("tau_z") = py::none(),
          "hyperbola integral, exact closed form")
      .def(
          "integral_lattice",
          [](const PairCase& pc, int N, const TauSpec& ty, const TauSpec& tz) {
            HypResult h = hyp_integral_lattice(pc.pd, packet(pc.pd, N, ty, tz));
            py::dict d;
            d["value"] = h.total().str();
            d["window"] = h.window;
            return d;
          },
          py::arg("N"), py::arg("tau_y") = py::none(), py::arg("tau_z") = py::none(),
          "hyperbola integral, finite-depth lattice sum (independent route)")
      .def("__repr__", [](const PairCase& pc) { return "<Pair " + pc.id + ">"; });

  m.def("enumerate_pairs", &enumerate_pairs, py::arg("p"), py::arg("kind"),
        py::arg("rep_cmax"), py::arg("chi_cmax"), py::arg("pair_cw_max") = 0,
        "all generic pairs; kind is ps|sc-unram|sc-ram");

  m.def(
      "run_config",
      [](const std::string& config_json, int threads) {
        return run_config(njson::parse(config_json), threads).ndjson();
      },
      py::arg("config_json"), py::arg("threads") = 1,
      "run one job config (verify-main | verify-factors | verify-opcalc | sweep); "
      "returns the NDJSON report body");

  m.def(
      "corpus_render",
      [](const std::string& config_json) {
        return corpus_render(njson::parse(config_json));
      },
      py::arg("config_json"), "deterministic report body for a corpus case config");

  m.def(
      "eps_half",
      [](int p, const std::string& char_spec, const std::string& ext) {
        njson j = njson::parse(char_spec);
        const Ring& R = ring_make(p, kind_from(ext), j.at("m").get<int>());
        return eps_half(char_from_json(j, R));
      },
      py::arg("p"), py::arg("char_spec"), py::arg("ext") = "base",
      "eps(1/2) of a multiplicative character given as "
      "{\"m\":digits,\"exps\":[..],\"wpi\":\"n/d\"}");
}
