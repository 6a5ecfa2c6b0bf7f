#pragma once
// GL(1) local factors (Gauss sums, epsilon factors, Tate zeta integrals and
// the functional equation) and the GL(2) gamma factor used by the Weyl
// element, for both principal-series and dihedral/supercuspidal data.
//
// Normalizations: psi has conductor O; Gauss sums and epsilon integrals use
// the ADDITIVE self-dual measure (vol(O) = 1 over the base field,
// vol(O_E) = q_E^{-d_E/2} over the extension, d_E = e-1 the level of
// psi_E = psi o Tr).  With these choices |eps(1/2)| = 1 exactly.

#include <stdexcept>

#include "relchar/characters.hpp"

namespace rc {

struct LFactorPresent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// g(nu, psi_t) = integral over O^x of nu(x) psi(t x) dx  (additive measure).
cplx gauss_sum(const MulChar& nu, const LocalElt& t);

// eps(1/2, Xi, psi_[E]) for a character of the base field or the quadratic
// extension (by the kind of Xi's defining ring).  Equals 1 for unramified
// base characters.
cplx eps_half(const MulChar& Xi);

// the inductivity constant lambda_{E/F}(psi) = eps(1/2, eta_{E/F}, psi)
cplx lambda_EF(const Ring& E);

// gamma(s) = coef * p^{shift * (1/2 - s)}  -- the gamma factor of a ramified
// character (or pair/rep) is a monomial in q^{-s}; shift is in base-q digits.
struct GammaMono {
  cplx coef;
  int shift = 0;
  cplx at(cplx s, int q) const;
};

// ---- Tate zeta integrals on step functions over the base field ----
// f = sum of values on the cosets  i * p^{-K} + p^M O,  0 <= i < p^{K+M}.
struct StepFn {
  int p = 0, K = 0, M = 0;
  std::vector<cplx> v;
  StepFn(int p_, int K_, int M_) : p(p_), K(K_), M(M_) {
    long long n = 1;
    for (int i = 0; i < K + M; ++i) n *= p;
    v.assign(n, 0.0);
  }
  long long grid() const { return (long long)v.size(); }
};

StepFn fourier(const StepFn& f);  // fhat(y) = int f(x) psi(xy) dx
// Z(s, f, chi) = int f(x) chi(x) |x|^s dx/|x|   (Re s in (0,1))
cplx zeta_Z(const StepFn& f, const MulChar& chi, cplx s);
// gamma(s, chi, psi): eps monomial for ramified chi, L-ratio for unramified.
cplx gamma_gl1(const MulChar& chi, cplx s);
// |Z(1-s, fhat, chi^{-1}) - gamma(s,chi,psi) Z(s, f, chi)| -- the residual
double verify_gl1_fe(const StepFn& f, const MulChar& chi, cplx s);

// |eps(1/2, chi*omega) - omega^{-1}(alpha_chi) eps(1/2, chi)| for c(omega) <=
// c(chi)/2; the stability-range twist law in this eps normalization.
double verify_tate_twist(const MulChar& chi, const MulChar& omega);

// ---- GL(2) representation data and its gamma factor ----
struct RepGL2 {
  enum Kind { PS, SC } kind = PS;
  // principal series: unitary chi0 (rep = chi0 x chi0^{-1} induced)
  MulChar chi0;
  // supercuspidal: quadratic extension ring + regular character xi of E^x
  // with xi restricted to F^x equal to eta_{E/F}
  const Ring* E = nullptr;
  MulChar xi;
};

// gamma(1/2 + (s - 1/2), pi x nu, psi) as a monomial; nu is the GL(1) twist.
// Throws LFactorPresent if an L-factor is nontrivial (some twist unramified).
GammaMono gamma_gl2(const RepGL2& pi, const MulChar& nu);

// conductor of pi twisted by nu (exponent of the monomial): in base digits
int cond_gl2(const RepGL2& pi, const MulChar& nu);

// checks for supercuspidal input data
bool xi_restricts_to_eta(const MulChar& xi, const Ring& E);
bool xi_is_regular(const MulChar& xi);  // xi != xi^sigma

}  // namespace rc
