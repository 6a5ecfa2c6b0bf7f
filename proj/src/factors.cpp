#include "relchar/factors.hpp"

#include <algorithm>
#include <map>

namespace rc {

namespace {
long long ipow(long long b, int e) { long long r = 1; while (e-- > 0) r *= b; return r; }

// canonical reduced code modulo w^L
long long red_w(const Ring& R, long long code, int L) {
  auto [a, b] = R.to_pair(code);
  switch (R.kind) {
    case RingKind::Base:
      return R.from_pair(a % ipow(R.p, std::min(L, R.m)), 0);
    case RingKind::Unram: {
      long long pk = ipow(R.p, std::min(L, R.m));
      return R.from_pair(a % pk, b % pk);
    }
    case RingKind::Ram: {
      int ja = std::min((L + 1) / 2, R.m);
      int jb = std::min(L / 2, R.m);
      return R.from_pair(a % ipow(R.p, ja), b % ipow(R.p, jb));
    }
  }
  throw std::logic_error("unreachable");
}
}  // namespace

cplx gauss_sum(const MulChar& nu, const LocalElt& t) {
  const Ring& R = *nu.R;
  if (R.kind != RingKind::Base) throw std::invalid_argument("gauss_sum: base-kind only");
  int L = std::max({nu.conductor(), t.is_zero() ? 0 : -t.v, 1});
  const Ring& RL = ring_make(R.p, RingKind::Base, L);
  double vol = 1.0 / (double)ipow(R.p, L);
  cplx s = 0;
  for (long long u : RL.units) {
    Frac phase = nu.unit_phase(u);
    if (!t.is_zero()) {
      LocalElt x = le_mul(t, LocalElt::make(R.p, 0, u, L));
      phase = (phase + psi_phase(x)).mod1();
    }
    s += unit_from_phase(phase);
  }
  return s * vol;
}

cplx eps_half(const MulChar& Xi) {
  const Ring& R = *Xi.R;
  int n = Xi.conductor();
  int dE = R.e - 1;
  if (n == 0 && dE == 0) return 1.0;  // unramified base character
  int L = n + dE;
  if (R.wdigits() < L) {
    const Ring& fine = ring_make(R.p, R.kind, (L + R.e - 1) / R.e);
    return eps_half(mc_lift(Xi, fine));
  }
  // sum over unit classes mod w^L
  std::map<long long, bool> seen;
  cplx sum = 0;
  for (long long u : R.units) {
    long long key = red_w(R, u, L);
    if (seen.count(key)) continue;
    seen[key] = true;
    Frac phase = (Frac(0) - Xi.unit_phase(key) + psiE_phase(R, L, key)).mod1();
    sum += unit_from_phase(phase);
  }
  double pref = std::pow((double)R.q, -0.5 * (L + dE));
  return unit_from_phase((Xi.wpi * L).mod1()) * pref * sum;
}

cplx lambda_EF(const Ring& E) {
  if (E.kind == RingKind::Unram) return 1.0;
  return eps_half(quad_char_of_ext(E, std::max(E.m, 2)));
}

cplx GammaMono::at(cplx s, int q) const {
  return coef * std::pow(cplx(q), (0.5 - s) * (double)shift);
}

StepFn fourier(const StepFn& f) {
  StepFn g(f.p, f.M, f.K);
  long long n = f.grid();
  double vol = 1.0 / (double)ipow(f.p, f.M);
  for (long long j = 0; j < n; ++j) {
    cplx s = 0;
    for (long long i = 0; i < n; ++i) {
      if (f.v[i] == 0.0) continue;
      // x = i p^{-K}, y = j p^{-M}: psi(xy) has phase ij / p^{K+M}
      s += f.v[i] * unit_from_phase(Frac((__int128)i * j % n, n));
    }
    g.v[j] = s * vol;
  }
  return g;
}

cplx zeta_Z(const StepFn& f, const MulChar& chi, cplx s) {
  int p = f.p, q = f.p;
  cplx total = 0;
  double volM = 1.0 / (double)ipow(p, f.M);
  for (long long i = 1; i < f.grid(); ++i) {
    if (f.v[i] == 0.0) continue;
    int t = 0;
    long long u = i;
    while (u % p == 0) { u /= p; ++t; }
    int v = t - f.K;  // valuation of the grid point
    int prec = f.K + f.M - t;
    // the cell is the multiplicative coset x(1 + p^{prec} O); if chi is not
    // constant on it, the chi-average over the cell vanishes exactly
    if (prec < chi.conductor()) continue;
    LocalElt x = LocalElt::make(p, v, u, std::max(prec, 1));
    // multiplicative measure of the coset: additive vol * |x|^{-1}
    double meas = volM * std::pow((double)q, v);
    total += f.v[i] * chi.eval_at(x) * std::pow((double)q, -(double)v) *
             std::pow(cplx(q), -s * (double)v) * meas * std::pow((double)q, (double)v);
  }
  // NB: chi(x)|x|^s dx/|x| ; |x|^s = q^{-vs}; the two q^{±v} above cancel --
  // kept explicit to mirror the integrand.  Tail over the cell p^M O:
  if (f.v[0] != 0.0) {
    if (chi.conductor() == 0) {
      cplx r = unit_from_phase(chi.wpi) * std::pow(cplx(q), -s);
      cplx geo = std::pow(r, (double)f.M) / (1.0 - r);
      total += f.v[0] * (1.0 - 1.0 / q) * geo;
    }
    // ramified chi: the integral over each deep shell vanishes
  }
  return total;
}

cplx gamma_gl1(const MulChar& chi, cplx s) {
  int q = chi.R->p;
  int c = chi.conductor();
  if (c >= 1) return GammaMono{eps_half(chi), c}.at(s, q);
  cplx cw = unit_from_phase(chi.wpi);
  return (1.0 - cw * std::pow(cplx(q), -s)) /
         (1.0 - std::pow(cplx(q), s - 1.0) / cw);
}

double verify_gl1_fe(const StepFn& f, const MulChar& chi, cplx s) {
  StepFn fh = fourier(f);
  cplx lhs = zeta_Z(fh, mc_inv(chi), 1.0 - s);
  cplx rhs = gamma_gl1(chi, s) * zeta_Z(f, chi, s);
  return std::abs(lhs - rhs);
}

double verify_tate_twist(const MulChar& chi, const MulChar& omega) {
  int c = chi.conductor();
  if (omega.conductor() * 2 > c) throw std::invalid_argument("verify_tate_twist: c(omega) > c/2");
  const Ring& fine = (chi.R->m >= omega.R->m) ? *chi.R : *omega.R;
  MulChar prod = mc_mul(mc_lift(chi, fine), mc_lift(omega, fine));
  AlphaF A = alpha_of(chi);
  cplx lhs = eps_half(prod);
  // with eps normalized as int chi^{-1} psi, the stability twist enters
  // through omega^{-1}(alpha); quadratic omega cannot see the difference
  cplx rhs = eps_half(chi) / omega.eval_at(A.alpha);
  return std::abs(lhs - rhs);
}

GammaMono gamma_gl2(const RepGL2& pi, const MulChar& nu) {
  if (pi.kind == RepGL2::PS) {
    const Ring& fine = (pi.chi0.R->m >= nu.R->m) ? *pi.chi0.R : *nu.R;
    MulChar a = mc_mul(mc_lift(pi.chi0, fine), mc_lift(nu, fine));
    MulChar b = mc_mul(mc_inv(mc_lift(pi.chi0, fine)), mc_lift(nu, fine));
    if (a.conductor() == 0 || b.conductor() == 0)
      throw LFactorPresent("gamma_gl2: unramified principal-series twist (L-factor present)");
    return GammaMono{eps_half(a) * eps_half(b), a.conductor() + b.conductor()};
  }
  const Ring& E = (pi.E->m >= nu.R->m) ? *pi.E : ring_make(pi.E->p, pi.E->kind, nu.R->m);
  MulChar nuE = nm_compose(nu, E);
  MulChar Xi = mc_mul(mc_lift(pi.xi, E), nuE);
  int c = Xi.conductor();
  if (c == 0) throw LFactorPresent("gamma_gl2: unramified dihedral twist");
  int dE = E.e - 1;
  return GammaMono{lambda_EF(E) * eps_half(Xi), E.f * (c + dE)};
}

int cond_gl2(const RepGL2& pi, const MulChar& nu) { return gamma_gl2(pi, nu).shift; }

bool xi_restricts_to_eta(const MulChar& xi, const Ring& E) {
  MulChar eta = quad_char_of_ext(E, E.m);
  const Ring& B = ring_make(E.p, RingKind::Base, E.m);
  for (long long g : B.gens) {
    long long emb = E.from_pair(g, 0);
    if (xi.unit_phase(emb) != eta.unit_phase(g)) return false;
  }
  // uniformizer of F: p = w^e * unit
  Frac xi_at_p;
  if (E.kind == RingKind::Unram) {
    xi_at_p = xi.wpi;  // p is the uniformizer of E
  } else {
    xi_at_p = (xi.wpi * 2).mod1();  // p = w^2 exactly
  }
  return xi_at_p == eta.wpi.mod1();
}

bool xi_is_regular(const MulChar& xi) {
  MulChar s = mc_sigma(xi);
  if (s.wpi.mod1() != xi.wpi.mod1()) return true;
  for (size_t i = 0; i < xi.ph.size(); ++i)
    if (s.ph[i].mod1() != xi.ph[i].mod1()) return true;
  return false;
}

}  // namespace rc
