#include "relchar/verify.hpp"

#include <array>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>

namespace rc {

namespace {

long long ipow(long long b, int e) { long long r = 1; while (e-- > 0) r *= b; return r; }

Frac parse_frac(const std::string& s) {
  size_t slash = s.find('/');
  if (slash == std::string::npos) return Frac(std::stoll(s));
  return Frac(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

njson cplx_json(cplx z) { return njson::array({z.real(), z.imag()}); }

std::string tau_str(const LocalElt& t) {
  if (t.is_zero()) return "0";
  return std::to_string(t.u) + "*p^" + std::to_string(t.v);
}

}  // namespace

int env_threads() {
  const char* s = std::getenv("RELCHAR_THREADS");
  if (!s) return 1;
  int n = std::atoi(s);
  return n > 0 ? n : 1;
}

// ---- reports -------------------------------------------------------------

void Report::add(njson rec) {
  if (rec.contains("pass")) (rec["pass"].get<bool>() ? n_pass : n_fail) += 1;
  records.push_back(std::move(rec));
}

std::string Report::ndjson() const {
  std::string out;
  for (const njson& r : records) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

std::string Report::csv() const {
  static const char* cols[] = {"type", "kind", "p",     "pair",  "char", "N",
                               "r",    "s",    "tau_x", "tau_y", "tau_z"};
  std::string out = "type,kind,p,pair,char,N,r,s,tau_x,tau_y,tau_z,residual,pass\n";
  for (const njson& r : records) {
    std::string line;
    for (const char* c : cols) {
      if (r.contains(c)) {
        const njson& v = r[c];
        line += v.is_string() ? v.get<std::string>() : v.dump();
      }
      line += ',';
    }
    line += r.contains("residual") ? r["residual"].dump() : "";
    line += ',';
    if (r.contains("pass")) line += r["pass"].get<bool>() ? "1" : "0";
    out += line;
    out += '\n';
  }
  return out;
}

// ---- characters in configs ----------------------------------------------

MulChar char_from_json(const njson& j, const Ring& R) {
  MulChar c;
  c.R = &R;
  const auto& exps = j.at("exps");
  if (exps.size() != R.gens.size())
    throw std::invalid_argument("config: exps length must match the unit-group basis (" +
                                std::to_string(R.gens.size()) + " generators)");
  for (size_t i = 0; i < R.gens.size(); ++i)
    c.ph.push_back(Frac(exps[i].get<long long>(), R.gen_order[i]).mod1());
  c.wpi = j.contains("wpi") ? parse_frac(j["wpi"].get<std::string>()) : Frac(0);
  return c;
}

njson char_to_json(const MulChar& c) {
  njson j;
  j["m"] = c.R->m;
  njson exps = njson::array();
  for (size_t i = 0; i < c.ph.size(); ++i) {
    Frac f = c.ph[i].mod1();
    exps.push_back(f.num * (c.R->gen_order[i] / f.den));
  }
  j["exps"] = exps;
  j["wpi"] = c.wpi.mod1().str();
  return j;
}

std::string char_id(const MulChar& c) {
  std::string s = "m" + std::to_string(c.R->m) + ":";
  for (size_t i = 0; i < c.ph.size(); ++i) {
    Frac f = c.ph[i].mod1();
    if (i) s += ",";
    s += std::to_string(f.num * (c.R->gen_order[i] / f.den));
  }
  s += ":w" + c.wpi.mod1().str();
  return s;
}

// ---- pair enumeration ----------------------------------------------------

std::vector<PairCase> enumerate_pairs(int p, const std::string& kind, int rep_cmax,
                                      int chi_cmax, int pair_cw_max) {
  std::vector<RepGL2> reps;
  if (kind == "ps")
    reps = enumerate_ps(p, rep_cmax);
  else if (kind == "sc-unram")
    reps = enumerate_sc(p, RingKind::Unram, rep_cmax);
  else if (kind == "sc-ram")
    reps = enumerate_sc(p, RingKind::Ram, rep_cmax);
  else
    throw std::invalid_argument("config: kind must be ps | sc-unram | sc-ram");
  const Ring& Rc = ring_make(p, RingKind::Base, std::max(chi_cmax, 1));
  std::vector<PairCase> out;
  for (const RepGL2& pi : reps) {
    for (const MulChar& chi : chars_of_ring(Rc)) {
      if (chi.conductor() < 1 || chi.conductor() > chi_cmax) continue;
      PairCase pc;
      pc.kind = kind;
      try {
        pc.pd = make_pair_data(pi, chi);
      } catch (const std::exception&) {
        continue;  // non-generic or unramified chi: not in scope
      }
      if (pair_cw_max > 0 && pc.pd.f_flat > pair_cw_max) continue;
      const MulChar& rc = (pi.kind == RepGL2::PS) ? pi.chi0 : pi.xi;
      pc.id = kind + "(" + char_id(rc) + ")x(" + char_id(chi) + ")";
      out.push_back(std::move(pc));
    }
  }
  return out;
}

// ---- main-identity grid --------------------------------------------------

void run_main_pair(const PairCase& pc, const VerifyOptions& opt, Report& rep) {
  const PairData& pd = pc.pd;
  int p = pd.chi.R->p;
  int Nlo = opt.N_lo;
  if (Nlo >= 0 && 2 * Nlo < pd.c_chi)
    throw std::invalid_argument("config: need N >= c(chi)/2");
  if (Nlo < 0) Nlo = (pd.c_chi + 1) / 2;

  std::vector<LocalElt> taus = {LocalElt::zero_elt(p)};
  if (!opt.tau_zero_only)
    for (int t = 1; t <= pd.tau_bound; ++t)
      for (long long u : ring_make(p, RingKind::Base, t + 1).units)
        taus.push_back(LocalElt::make(p, -t, u, t + 1));

  int Mmax = std::max({pd.c_chi, opt.tau_zero_only ? 0 : pd.tau_bound, 1}) + 1;
  RepCtx shared(kirillov_ctx(p, Mmax), pd.pi);

  std::vector<cplx> ratios;
  double ratio_dev = 0, unimod_dev = 0;
  long long points = 0, fails = 0;
  for (int N = Nlo; N <= opt.N_hi; ++N) {
    LocalElt in = le_shift(pd.alpha_chi.alpha, N);
    std::vector<std::pair<std::string, LocalElt>> txs = {
        {"in", in},
        {"edge", le_add(in, LocalElt::from_int(p, 1, 3))},
        {"out", le_add(in, LocalElt::make(p, -1, 1, 3))}};
    for (const auto& [xlabel, tx] : txs) {
      for (const LocalElt& ty : taus) {
        for (const LocalElt& tz : taus) {
          Wavepacket a;
          a.N = N;
          a.tau_x = tx;
          a.tau_y = ty;
          a.tau_z = tz;
          BruteResult b = relchar_bruteforce(pd, a, Engine::Chars, &shared);
          TableResult t = relchar_table(pd, a);
          HypResult hc = hyp_integral_closed(pd, a);
          HypResult hl = hyp_integral_lattice(pd, a);
          double rhs = hc.total().to_double();
          double resid = std::abs(std::abs(b.H) - rhs);
          bool stab = (b.H == b.H_stab);
          bool lat_ok = (hc.value == hl.value) && (hc.window == hl.window);
          bool tol_ok = resid <= opt.tol * std::max(1.0, rhs);
          cplx ratio = rhs > 0 ? b.H / rhs : cplx(0);
          bool uni_ok = true;
          if (rhs > 0) {
            double d = std::abs(std::abs(ratio) - 1.0);
            unimod_dev = std::max(unimod_dev, d);
            uni_ok = d <= opt.tol;
            ratios.push_back(ratio);
          }
          // uncertainty principle: the two-sided cell is empty below the
          // constituent-conductor scale
          bool unc_ok = true;
          if (a.r() > 0 && a.s() > 0 && std::abs(b.H) > opt.tol) {
            if (pc.kind == "ps")
              unc_ok = 2 * N >= std::max(pd.f_flat, pd.f_sharp);
            else if (pc.kind == "sc-unram")
              unc_ok = 2 * N >= pd.f_flat;
          }
          bool pass = stab && lat_ok && tol_ok && uni_ok && unc_ok;
          fails += pass ? 0 : 1;
          ++points;

          njson r;
          r["type"] = "grid";
          r["kind"] = pc.kind;
          r["p"] = p;
          r["pair"] = pc.id;
          r["c_chi"] = pd.c_chi;
          r["c_pair"] = pd.c_pair;
          r["N"] = N;
          r["r"] = a.r();
          r["s"] = a.s();
          r["tau_x"] = xlabel;
          r["tau_y"] = tau_str(ty);
          r["tau_z"] = tau_str(tz);
          r["lhs_bruteforce"] = cplx_json(b.H);
          r["stab_exact"] = stab;
          r["lhs_table"] = cplx_json(t.value);
          r["table_cell"] = t.cell.str();
          r["window"] = hc.window;
          r["rhs_closed"] = rhs;
          r["rhs_closed_exact"] = hc.value.str();
          r["rhs_lattice_exact"] = hl.value.str();
          r["lattice_matches_closed"] = lat_ok;
          r["table_matches_integral"] = (t.cell == hc.value);
          r["ratio"] = cplx_json(ratio);
          r["residual"] = resid;
          r["sign_convention"] = "+1";
          r["pass"] = pass;
          rep.add(std::move(r));
        }
      }
    }
  }
  for (const cplx& z : ratios) ratio_dev = std::max(ratio_dev, std::abs(z - ratios[0]));
  bool const_ok = ratio_dev <= opt.tol && unimod_dev <= opt.tol;
  njson s;
  s["type"] = "pair-summary";
  s["kind"] = pc.kind;
  s["p"] = p;
  s["pair"] = pc.id;
  s["points"] = points;
  s["grid_failures"] = fails;
  s["ratio_ref"] = cplx_json(ratios.empty() ? cplx(0) : ratios[0]);
  s["ratio_max_dev"] = ratio_dev;
  s["ratio_constant"] = const_ok;
  s["residual"] = ratio_dev;
  s["pass"] = (fails == 0) && const_ok && !ratios.empty();
  rep.add(std::move(s));
}

void run_main(const std::vector<PairCase>& pairs, const VerifyOptions& opt, Report& rep,
              int threads) {
  if (threads <= 1 || pairs.size() <= 1) {
    for (const PairCase& pc : pairs) run_main_pair(pc, opt, rep);
    return;
  }
  // shared tables (rings, contexts) are built behind mutexes; each pair task
  // only appends to its own report, gathered in pair order afterwards
  std::vector<Report> parts(pairs.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i = next.fetch_add(1); i < pairs.size(); i = next.fetch_add(1))
      run_main_pair(pairs[i], opt, parts[i]);
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  for (Report& part : parts)
    for (njson& r : part.records) rep.add(std::move(r));
}

// ---- factor suite --------------------------------------------------------

namespace {

StepFn indicator_ball(int p, int K, int M, long long i0) {
  StepFn f(p, K, M);
  f.v[i0] = 1.0;
  return f;
}

void factor_eps_gauss(int p, int cmax, Report& rep) {
  const Ring& R = ring_make(p, RingKind::Base, cmax);
  for (const MulChar& nu : chars_of_ring(R)) {
    int c = nu.conductor();
    if (c == 0) continue;
    std::string id = char_id(nu);
    double re = std::abs(std::abs(eps_half(nu)) - 1.0);
    LocalElt t = LocalElt::make(p, -c, 1, c + 1);
    double rg = std::abs(std::norm(gauss_sum(nu, t)) - std::pow((double)p, -c));
    double rv = 0;
    for (int k : {c - 1, c + 1}) {
      LocalElt tk = LocalElt::make(p, -k, 1, std::max(k, 1) + 1);
      rv = std::max(rv, std::abs(gauss_sum(nu, tk)));
    }
    njson a;
    a["type"] = "eps-unitarity";
    a["p"] = p;
    a["char"] = id;
    a["residual"] = re;
    a["pass"] = re < 1e-10;
    rep.add(std::move(a));
    njson b;
    b["type"] = "gauss-modulus";
    b["p"] = p;
    b["char"] = id;
    b["residual"] = rg;
    b["pass"] = rg < 1e-10;
    rep.add(std::move(b));
    njson v;
    v["type"] = "gauss-mismatch";
    v["p"] = p;
    v["char"] = id;
    v["residual"] = rv;
    v["pass"] = rv < 1e-12;
    rep.add(std::move(v));
  }
}

void factor_tate_twist(int p, Report& rep) {
  std::vector<int> conds = (p == 3) ? std::vector<int>{2, 4} : std::vector<int>{2};
  for (int cc : conds) {
    const Ring& Rc = ring_make(p, RingKind::Base, cc);
    for (const MulChar& chi : chars_of_ring(Rc)) {
      if (chi.conductor() != cc) continue;
      for (int t = 1; t <= cc / 2; ++t) {
        for (const MulChar& om : enumerate_X(p, t)) {
          if (om.conductor() != t) continue;
          double res = verify_tate_twist(chi, om);
          njson r;
          r["type"] = "tate-twist";
          r["p"] = p;
          r["char"] = char_id(chi);
          r["twist"] = char_id(om);
          r["residual"] = res;
          r["pass"] = res < 1e-9;
          rep.add(std::move(r));
        }
      }
    }
  }
}

void factor_gl1_fe(int p, int cmax, Report& rep) {
  std::vector<cplx> sgrid;
  for (int j = 0; j < 8; ++j) sgrid.push_back(cplx(0.2 + 0.08 * j, 0.3 * j - 1.0));
  const Ring& R = ring_make(p, RingKind::Base, cmax);
  std::vector<MulChar> chars = chars_of_ring(R);
  {
    MulChar un;  // unramified with a nontrivial uniformizer phase (L-ratio path)
    un.R = &R;
    un.ph.assign(R.gens.size(), Frac(0));
    un.wpi = Frac(1, 3);
    chars.push_back(un);
  }
  for (const MulChar& chi : chars) {
    int c = chi.conductor();
    int K = 1, M = std::max(c, 2);
    std::vector<StepFn> fam;
    fam.push_back(indicator_ball(p, K, M, ipow(p, K)));          // 1 + p^M O
    fam.push_back(indicator_ball(p, K, M, 2 * ipow(p, K) + 1));  // a deeper coset
    {
      StepFn f(p, K, M);  // 1_O
      for (long long i = 0; i < f.grid(); i += ipow(p, K)) f.v[i] = 1.0;
      fam.push_back(f);
    }
    {
      StepFn f(p, K, M);  // 1_{p^{-1} O^x}
      for (long long i = 1; i < f.grid(); ++i)
        if (i % p != 0) f.v[i] = 1.0;
      fam.push_back(f);
    }
    double res = 0;
    for (const StepFn& f : fam)
      for (cplx s : sgrid) res = std::max(res, verify_gl1_fe(f, chi, s));
    njson r;
    r["type"] = "gl1-fe";
    r["p"] = p;
    r["char"] = char_id(chi) + (c == 0 ? "(unram)" : "");
    r["residual"] = res;
    r["pass"] = res < 1e-9;
    rep.add(std::move(r));
  }
}

void factor_gl2_gamma(int p, Report& rep) {
  // shift formula and unitarity of the Weyl gamma across both rep kinds
  auto emit = [&](const std::string& id, int shift, int expect, cplx coef) {
    double res = std::abs(std::abs(coef) - 1.0);
    njson r;
    r["type"] = "gl2-gamma";
    r["p"] = p;
    r["pair"] = id;
    r["shift"] = shift;
    r["shift_expected"] = expect;
    r["residual"] = res;
    r["pass"] = (shift == expect) && res < 1e-10;
    rep.add(std::move(r));
  };
  for (const RepGL2& pi : enumerate_ps(p, 1)) {
    for (const MulChar& nu : enumerate_X(p, 2)) {
      const Ring& fine = (pi.chi0.R->m >= nu.R->m) ? *pi.chi0.R : *nu.R;
      MulChar a = mc_mul(mc_lift(pi.chi0, fine), mc_lift(nu, fine));
      MulChar b = mc_mul(mc_inv(mc_lift(pi.chi0, fine)), mc_lift(nu, fine));
      if (a.conductor() == 0 || b.conductor() == 0) continue;
      GammaMono g = gamma_gl2(pi, nu);
      emit("ps(" + char_id(pi.chi0) + ")x(" + char_id(nu) + ")", g.shift,
           a.conductor() + b.conductor(), g.coef);
    }
  }
  for (RingKind k : {RingKind::Unram, RingKind::Ram}) {
    std::string kn = (k == RingKind::Unram) ? "sc-unram" : "sc-ram";
    for (const RepGL2& pi : enumerate_sc(p, k, (k == RingKind::Ram) ? 2 : 1)) {
      for (const MulChar& nu : enumerate_X(p, 1)) {
        const Ring& E = (pi.E->m >= nu.R->m) ? *pi.E : ring_make(p, pi.E->kind, nu.R->m);
        MulChar prod = mc_mul(mc_lift(pi.xi, E), nm_compose(nu, E));
        if (prod.conductor() == 0) continue;
        GammaMono g = gamma_gl2(pi, nu);
        emit(kn + "(" + char_id(pi.xi) + ")x(" + char_id(nu) + ")", g.shift,
             E.f * (prod.conductor() + E.e - 1), g.coef);
      }
    }
  }
}

}  // namespace

void run_factor_suite(int p, Report& rep) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("config: p must be an odd prime");
  int cmax = (p == 3) ? 3 : 2;
  factor_eps_gauss(p, cmax, rep);
  factor_tate_twist(p, rep);
  factor_gl1_fe(p, cmax, rep);
  factor_gl2_gamma(p, rep);
}

// ---- operator-calculus suite ---------------------------------------------

namespace {

PairCase first_pair(int p, const std::string& kind, int rep_cmax, int chi_cmax) {
  auto v = enumerate_pairs(p, kind, rep_cmax, chi_cmax);
  if (v.empty()) throw std::runtime_error("opcalc suite: no generic pair found");
  return v.front();
}

void opcalc_orderings(int p, const PairCase& pc, Report& rep) {
  const PairData& pd = pc.pd;
  int M = std::max(pd.c_chi, 2) + 1;
  const KirillovCtx& C = kirillov_ctx(p, M);
  RepCtx rc(C, pd.pi);
  int N = 2;
  LocalElt u1 = LocalElt::make(p, -1, 1, 3);
  LocalElt tx = le_shift(pd.alpha_chi.alpha, N);
  CharVec W = v_chi_R_chars(C, pd.chi, N + pd.c_pair + 1);
  auto P = [&](const CharVec& v) { return op_plus(u1, N, v); };
  auto Z = [&](const CharVec& v) { return op_zero(tx, N, v); };
  auto Mi = [&](const CharVec& v) { return op_minus(u1, N, rc, v); };
  using F = std::function<CharVec(const CharVec&)>;
  std::vector<std::array<F, 3>> orders = {{P, Z, Mi}, {P, Mi, Z}, {Z, P, Mi},
                                          {Z, Mi, P}, {Mi, P, Z}, {Mi, Z, P}};
  KirillovVec ref;
  double res = 0;
  bool first = true;
  for (auto& [f, g, h] : orders) {
    KirillovVec v = to_units(h(g(f(W))));
    if (first) {
      ref = v;
      first = false;
    } else {
      res = std::max(res, max_diff(v, ref));
    }
  }
  njson r;
  r["type"] = "opcalc-orderings";
  r["p"] = p;
  r["pair"] = pc.id;
  r["residual"] = res;
  r["pass"] = res < 1e-9;
  rep.add(std::move(r));
}

void opcalc_star(int p, Report& rep) {
  int mm = 4;
  long long pmm = ipow(p, mm);
  std::vector<Mat2> mats;
  for (long long h : {0LL, 1LL, 2LL})
    for (long long b : {0LL, 2LL})
      for (long long c : {0LL, 1LL})
        mats.push_back(Mat2{p * h % pmm, p * b % pmm, p * c % pmm, (pmm - p * h % pmm) % pmm});
  bool exact = true;
  for (const Mat2& x : mats) {
    for (const Mat2& y : mats) {
      Mat2 s = star(p, mm, x, y);
      Mat2 lhs = mat_mul(p, mm, mat_exp_padic(p, mm, x), mat_exp_padic(p, mm, y));
      Mat2 rhs = mat_exp_padic(p, mm, s);
      exact &= lhs.a == rhs.a && lhs.b == rhs.b && lhs.c == rhs.c && lhs.d == rhs.d;
      exact &= (s.a + s.d) % pmm == 0;
      for (int m : {1, 2}) {
        for (const Mat2& xi : {Mat2{1, 0, 0, 2}, Mat2{0, 1, 2, 0}, Mat2{2, 1, 1, 1}}) {
          Frac lp = (pair_phase(p, x, xi, m) + pair_phase(p, y, xi, m)).mod1();
          exact &= lp == pair_phase(p, s, xi, m).mod1();
        }
      }
    }
  }
  njson r;
  r["type"] = "opcalc-star";
  r["p"] = p;
  r["exact"] = exact;
  r["residual"] = exact ? 0.0 : 1.0;
  r["pass"] = exact;
  rep.add(std::move(r));
}

void opcalc_wavepacket(int p, Report& rep) {
  int N = 1;
  std::vector<std::tuple<LocalElt, LocalElt, LocalElt, cplx>> samples;
  std::vector<LocalElt> reps = {LocalElt::zero_elt(p), LocalElt::make(p, -1, 1, 2),
                                LocalElt::make(p, -1, 2, 2)};
  int k = 0;
  for (const LocalElt& x : reps)
    for (const LocalElt& y : reps)
      samples.push_back({x, y, reps[k++ % 3], cplx(k, -k / 2.0)});
  WavepacketSum a = wavepacket_decompose(samples, N);
  double res = 0;
  for (const auto& [tx, ty, tz, val] : samples) {
    cplx got = wavepacket_eval(a, le_shift(tx, -N), le_shift(ty, -N), le_shift(tz, -N));
    res = std::max(res, std::abs(got - val));
  }
  njson r;
  r["type"] = "opcalc-wavepacket";
  r["p"] = p;
  r["residual"] = res;
  r["pass"] = res == 0.0;
  rep.add(std::move(r));
}

void opcalc_microlocal(int p, const PairCase& pc, Report& rep) {
  // determine the sign convention empirically: the output of op_full must
  // transform under n(x), x in p^N, by psi(sign * x T tau_y)
  const PairData& pd = pc.pd;
  int M = std::max(pd.c_chi, 2) + 1;
  const KirillovCtx& C = kirillov_ctx(p, M);
  RepCtx rc(C, pd.pi);
  int N = 2;
  LocalElt ty = LocalElt::make(p, -1, 2, 3);
  Wavepacket a;
  a.N = N;
  a.tau_x = le_shift(pd.alpha_chi.alpha, N);
  a.tau_y = ty;
  a.tau_z = LocalElt::zero_elt(p);
  KirillovVec W = op_full(a, rc, v_chi_R(C, pd.chi, N + pd.c_pair + 1));
  LocalElt Tty = le_shift(ty, -N);
  double rplus = 0, rminus = 0;
  for (long long xu = 1; xu < p; ++xu) {
    LocalElt x = LocalElt::make(p, N, xu, 3);
    KirillovVec A = act_unipotent(x, W);
    for (int sgn : {+1, -1}) {
      cplx ph = psi_eval(le_mul(x, Tty));
      if (sgn < 0) ph = std::conj(ph);
      KirillovVec B = W;
      for (auto& [n, f] : B.sh)
        for (auto& v : f) v *= ph;
      (sgn > 0 ? rplus : rminus) = std::max(sgn > 0 ? rplus : rminus, max_diff(A, B));
    }
  }
  njson r;
  r["type"] = "opcalc-microlocal";
  r["p"] = p;
  r["pair"] = pc.id;
  r["sign_convention"] = rplus <= rminus ? "+1" : "-1";
  r["residual"] = std::min(rplus, rminus);
  r["pass"] = rplus < 1e-9 && rplus <= rminus;
  rep.add(std::move(r));
}

}  // namespace

void run_opcalc_suite(int p, Report& rep) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("config: p must be an odd prime");
  PairCase ps = first_pair(p, "ps", 1, 2);
  PairCase sc = first_pair(p, "sc-unram", 1, 1);
  opcalc_orderings(p, ps, rep);
  opcalc_orderings(p, sc, rep);
  opcalc_star(p, rep);
  opcalc_wavepacket(p, rep);
  opcalc_microlocal(p, ps, rep);
  opcalc_microlocal(p, sc, rep);
}

// ---- config dispatch -----------------------------------------------------

namespace {

std::vector<int> primes_of(const njson& config) {
  std::vector<int> ps;
  if (!config.contains("p"))
    ps = {3};
  else if (config["p"].is_array())
    for (const njson& v : config["p"]) ps.push_back(v.get<int>());
  else
    ps = {config["p"].get<int>()};
  for (int p : ps)
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("config: p must be an odd prime");
  return ps;
}

VerifyOptions options_of(const njson& config) {
  VerifyOptions opt;
  if (config.contains("N")) {
    const njson& n = config["N"];
    if (n.is_array()) {
      opt.N_lo = n.at(0).get<int>();
      opt.N_hi = n.at(1).get<int>();
    } else {
      opt.N_lo = opt.N_hi = n.get<int>();
    }
  }
  if (config.contains("tau")) opt.tau_zero_only = config["tau"].get<std::string>() == "zero";
  if (config.contains("tol")) opt.tol = config["tol"].get<double>();
  return opt;
}

PairCase pair_of(const njson& config, int p) {
  std::string kind = config.value("kind", "ps");
  const njson& rj = config.at("rep");
  const njson& cj = config.at("chi");
  RepGL2 pi;
  if (kind == "ps") {
    pi.kind = RepGL2::PS;
    pi.chi0 = char_from_json(rj, ring_make(p, RingKind::Base, rj.at("m").get<int>()));
  } else if (kind == "sc-unram" || kind == "sc-ram") {
    pi.kind = RepGL2::SC;
    RingKind rk = (kind == "sc-unram") ? RingKind::Unram : RingKind::Ram;
    const Ring& E = ring_make(p, rk, rj.at("m").get<int>());
    pi.E = &E;
    pi.xi = char_from_json(rj, E);
    if (!xi_restricts_to_eta(pi.xi, E))
      throw std::invalid_argument("config: xi does not restrict to eta_{E/F}");
    if (!xi_is_regular(pi.xi))
      throw std::invalid_argument("config: xi is not regular (xi = xi^sigma)");
  } else {
    throw std::invalid_argument("config: kind must be ps | sc-unram | sc-ram");
  }
  MulChar chi = char_from_json(cj, ring_make(p, RingKind::Base, cj.at("m").get<int>()));
  PairCase pc;
  pc.kind = kind;
  pc.pd = make_pair_data(pi, chi);
  const MulChar& rch = (pi.kind == RepGL2::PS) ? pi.chi0 : pi.xi;
  pc.id = kind + "(" + char_id(rch) + ")x(" + char_id(chi) + ")";
  return pc;
}

}  // namespace

Report run_config(const njson& config, int threads) {
  std::string cmd = config.value("cmd", "verify-main");
  Report rep;
  if (cmd == "verify-factors") {
    for (int p : primes_of(config)) run_factor_suite(p, rep);
  } else if (cmd == "verify-opcalc") {
    for (int p : primes_of(config)) run_opcalc_suite(p, rep);
  } else if (cmd == "verify-main" || cmd == "sweep") {
    VerifyOptions opt = options_of(config);
    std::vector<PairCase> pairs;
    if (cmd == "verify-main" && config.contains("rep")) {
      pairs.push_back(pair_of(config, primes_of(config).at(0)));
    } else {
      std::vector<std::string> kinds;
      if (config.contains("kinds"))
        for (const njson& k : config["kinds"]) kinds.push_back(k.get<std::string>());
      else
        kinds.push_back(config.value("kind", "ps"));
      int rep_cmax = config.value("rep_cmax", 1);
      int chi_cmax = config.value("chi_cmax", 2);
      int pair_cw = config.value("pair_cw_max", 0);
      for (int p : primes_of(config))
        for (const std::string& k : kinds)
          for (PairCase& pc : enumerate_pairs(p, k, rep_cmax, chi_cmax, pair_cw))
            pairs.push_back(std::move(pc));
    }
    if (pairs.empty()) throw std::invalid_argument("config: no admissible pair selected");
    run_main(pairs, opt, rep, threads);
  } else {
    throw std::invalid_argument("config: unknown cmd '" + cmd + "'");
  }
  return rep;
}

std::string corpus_render(const njson& config) {
  // sequential on purpose: corpus reports are frozen byte-exact
  return run_config(config, 1).ndjson();
}

}  // namespace rc
