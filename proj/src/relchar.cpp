#include "relchar/relchar.hpp"

#include <algorithm>

namespace rc {

namespace {
long long ipow(long long b, int e) { long long r = 1; while (e-- > 0) r *= b; return r; }

bool frac_less(const Frac& a, const Frac& b) {
  Frac x = a.mod1(), y = b.mod1();
  return x.num * y.den < y.num * x.den;
}

// lex order on (ph, wpi), phases taken mod 1
bool char_leq(const MulChar& a, const MulChar& b) {
  for (size_t i = 0; i < a.ph.size(); ++i) {
    if (frac_less(a.ph[i], b.ph[i])) return true;
    if (frac_less(b.ph[i], a.ph[i])) return false;
  }
  return !frac_less(b.wpi, a.wpi);
}
}  // namespace

std::vector<RepGL2> enumerate_ps(int p, int cmax) {
  const Ring& R = ring_make(p, RingKind::Base, std::max(cmax, 1));
  std::vector<RepGL2> out;
  for (const MulChar& c : chars_of_ring(R)) {
    if (c.conductor() < 1) continue;
    if (!char_leq(c, mc_inv(c))) continue;  // chi0 ~ chi0^{-1}
    RepGL2 pi;
    pi.kind = RepGL2::PS;
    pi.chi0 = c;
    out.push_back(std::move(pi));
  }
  return out;
}

std::vector<RepGL2> enumerate_sc(int p, RingKind kind, int cmax_w) {
  int e = (kind == RingKind::Ram) ? 2 : 1;
  int m = std::max(1, (cmax_w + e - 1) / e);
  const Ring& E = ring_make(p, kind, m);
  MulChar eta = quad_char_of_ext(E, m);
  std::vector<Frac> wpis;
  if (kind == RingKind::Unram) {
    wpis = {eta.wpi};  // xi(p) = eta(p)
  } else {
    // xi(p) = xi(w)^2 = eta(p): two square roots
    Frac half(eta.wpi.num, eta.wpi.den * 2);
    wpis = {half.mod1(), (half + Frac(1, 2)).mod1()};
  }
  std::vector<RepGL2> out;
  for (MulChar xi : chars_of_ring(E)) {
    if (xi.conductor() > cmax_w) continue;
    for (const Frac& w : wpis) {
      xi.wpi = w;
      if (!xi_restricts_to_eta(xi, E)) continue;
      if (!xi_is_regular(xi)) continue;
      if (!char_leq(xi, mc_sigma(xi))) continue;  // xi ~ xi^sigma
      RepGL2 pi;
      pi.kind = RepGL2::SC;
      pi.E = &E;
      pi.xi = xi;
      out.push_back(std::move(pi));
    }
  }
  return out;
}

PairData make_pair_data(const RepGL2& pi, const MulChar& chi) {
  if (chi.R->kind != RingKind::Base)
    throw std::invalid_argument("make_pair_data: chi must be a base-field character");
  PairData pd;
  pd.pi = pi;
  pd.chi = chi;
  pd.c_chi = chi.conductor();
  if (pd.c_chi < 1)
    throw std::invalid_argument("make_pair_data: chi unramified (alpha datum undefined)");
  GammaMono g = gamma_gl2(pi, mc_inv(chi));  // throws LFactorPresent if non-generic
  pd.c_pair = g.shift;
  pd.gamma_half = g.coef;
  pd.alpha_chi = alpha_of(chi);

  int p = chi.R->p;
  int scan_cap = std::min(pd.c_pair, 3);
  int scan = 0;
  if (pi.kind == RepGL2::PS) {
    const Ring& fine = ring_make(p, RingKind::Base, std::max(pi.chi0.R->m, chi.R->m));
    MulChar c0 = mc_lift(pi.chi0, fine);
    MulChar cx = mc_lift(chi, fine);
    MulChar chfl = mc_mul(c0, mc_inv(cx));
    MulChar chsh = mc_mul(mc_inv(c0), mc_inv(cx));
    pd.alpha_pair = alpha_pair_ps(alpha_of(chfl), alpha_of(chsh));
    int ffl = chfl.conductor(), fsh = chsh.conductor();
    pd.f_flat = ffl;
    pd.f_sharp = fsh;
    for (int t = 1; t <= scan_cap; ++t) {
      bool ok = true;
      for (const MulChar& om : enumerate_X(p, t)) {
        if (om.conductor() != t) continue;
        MulChar oi = mc_inv(mc_lift(om, fine));
        if (mc_mul(chfl, oi).conductor() != ffl || mc_mul(chsh, oi).conductor() != fsh) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      scan = t;
    }
  } else {
    const Ring& E = (pi.E->m >= chi.R->m) ? *pi.E : ring_make(p, pi.E->kind, chi.R->m);
    MulChar Xi = mc_mul(mc_lift(pi.xi, E), mc_inv(nm_compose(chi, E)));
    pd.alpha_pair = alpha_pair_sc(alpha_of_ext(Xi));
    int cXi = Xi.conductor();
    pd.f_flat = cXi;
    for (int t = 1; t <= scan_cap; ++t) {
      bool ok = true;
      const Ring& Ef = ring_make(p, E.kind, std::max(E.m, t));
      MulChar Xif = mc_lift(Xi, Ef);
      for (const MulChar& om : enumerate_X(p, t)) {
        if (om.conductor() != t) continue;
        if (mc_mul(Xif, mc_inv(nm_compose(om, Ef))).conductor() != cXi) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      scan = t;
    }
  }
  pd.tau_bound = std::min(scan, pd.alpha_pair.prec);
  return pd;
}

BruteResult relchar_bruteforce(const PairData& pd, const Wavepacket& a, Engine eng,
                               RepCtx* rep_in) {
  int p = pd.chi.R->p;
  int N = a.N;
  if (2 * N < pd.c_chi)
    throw std::invalid_argument("relchar_bruteforce: need 2N >= c(chi)");
  int M = std::max({pd.c_chi, a.r(), a.s(), 1}) + 1;
  if (rep_in && rep_in->C->M < M)
    throw std::invalid_argument("relchar_bruteforce: shared RepCtx is too coarse");
  std::optional<RepCtx> own;
  if (!rep_in) own.emplace(kirillov_ctx(p, M), pd.pi);
  RepCtx& rep = rep_in ? *rep_in : *own;
  const KirillovCtx& C = *rep.C;
  auto run = [&](int R) -> cplx {
    if (eng == Engine::Chars) {
      CharVec v = v_chi_R_chars(C, pd.chi, R);
      return inner(op_full(a, rep, v), v);
    }
    KirillovVec v = v_chi_R(C, pd.chi, R);
    return inner(op_full(a, rep, v), v);
  };
  BruteResult out;
  out.R = N + pd.c_pair + 1;
  out.M = M;
  out.H = run(out.R);
  out.H_stab = run(out.R + 2);
  return out;
}

TableResult relchar_table(const PairData& pd, const Wavepacket& a) {
  int p = pd.chi.R->p, q = p;
  int N = a.N, r = a.r(), s = a.s();
  if (2 * N < pd.c_chi) throw std::invalid_argument("relchar_table: need 2N >= c(chi)");
  if (std::max(r, s) > pd.tau_bound)
    throw std::invalid_argument("relchar_table: tau depth outside the regime (tau_bound)");
  TableResult out;
  out.r = r;
  out.s = s;
  out.window = in_ball(pd.alpha_chi.alpha, le_shift(a.tau_x, -N), N);
  auto xsize = [&](int t) { return Frac(1, ipow(q, t - 1) * (q - 1)); };  // 1/|X_t|
  int c = pd.c_pair;
  if (r == 0 && s == 0) {
    out.cell = (2 * N >= c) ? Frac(2 * N - c) : Frac(0);
  } else if (s == 0) {
    out.cell = (2 * N + r >= c) ? xsize(r) : Frac(0);
  } else if (r == 0) {
    out.cell = (2 * N + s >= c) ? xsize(s) : Frac(0);
  } else {
    LocalElt Tty = le_shift(a.tau_y, -N), Ttz = le_shift(a.tau_z, -N);
    LocalElt ratio = le_div(pd.alpha_pair, le_mul(Tty, Ttz));
    int mn = std::min(r, s);
    bool ind = false;
    if (!ratio.is_zero() && ratio.v == 0) {
      if (ratio.prec < mn)
        throw std::runtime_error("relchar_table: alpha_pair precision below min(r,s)");
      ind = (ratio.u - 1) % ipow(p, mn) == 0;
    }
    out.cell = ind ? xsize(std::max(r, s)) : Frac(0);
  }
  out.value = out.window ? cplx(out.cell.to_double(), 0.0) : cplx(0.0, 0.0);
  return out;
}

}  // namespace rc
