#pragma once
// Multiplicative characters of the base field / quadratic extension with
// EXACT rational phases.  A character is stored by its phases on the basis
// of the unit group of a defining residue ring, plus the phase at the field
// uniformizer (p for the base / unramified case, w for the ramified case).

#include <optional>
#include <vector>

#include "relchar/frac.hpp"
#include "relchar/local.hpp"
#include "relchar/ring.hpp"

namespace rc {

struct MulChar {
  const Ring* R = nullptr;       // defining ring
  std::vector<Frac> ph;          // phase at R->gens[i]
  Frac wpi;                      // phase at the field uniformizer

  mutable int cond_cache = -1;

  // Phase at a unit code.  `code` may be any integer lift of a unit of R
  // modulo w^{conductor}; it is reduced into R first.
  Frac unit_phase(long long code) const;
  cplx unit_eval(long long code) const { return unit_from_phase(unit_phase(code)); }

  // Conductor in w-digits of the defining ring (0 for unramified characters).
  int conductor() const;
  bool unit_trivial() const { return conductor() == 0; }

  // Phase at a base-field element (base-kind characters only).
  Frac phase_at(const LocalElt& x) const;
  cplx eval_at(const LocalElt& x) const { return unit_from_phase(phase_at(x)); }
};

// same-ring pointwise operations
MulChar mc_mul(const MulChar& a, const MulChar& b);
MulChar mc_inv(const MulChar& a);
// transport to a finer ring of the same kind
MulChar mc_lift(const MulChar& a, const Ring& fine);
// Galois twist  chi^sigma(x) = chi(sigma x)  (extension rings)
MulChar mc_sigma(const MulChar& a);

// All characters of the unit group of R (w-power-trivial extension to the
// field: phase at uniformizer = 0), in deterministic odometer order.
std::vector<MulChar> chars_of_ring(const Ring& R);

// X_n: all characters of (O/p^n)^x for the base field; n = 0 gives only the
// trivial character.  Sizes: 1, p-1, p(p-1), ...
std::vector<MulChar> enumerate_X(int p, int n);

// chi of the base field composed with the norm of E (given by its ring).
MulChar nm_compose(const MulChar& chi, const Ring& E);

// Quadratic character of the base field attached to the extension E by class
// field theory: trivial exactly on norms from E^x.
MulChar quad_char_of_ext(const Ring& E, int base_m);

// ---- the alpha oracle:  chi(1+x) = psi(alpha x)  on  x in w^{ceil(c/2)} O --
struct AlphaF {
  LocalElt alpha;   // p^{-c} * unit
  int domain = 0;   // ceil(c/2)
  int unit_prec = 0;  // unit part honestly determined mod p^{unit_prec}
};
AlphaF alpha_of(const MulChar& chi);  // base-kind, c(chi) >= 1

struct AlphaE {
  const Ring* R = nullptr;
  int kneg = 0;         // alpha = w^{-kneg} * code,  kneg = c + d_E
  long long code = 0;   // unit code, canonical rep
  int domain = 0;       // ceil(c/2) in w-digits
  int unit_prec_w = 0;  // code determined mod w^{unit_prec_w}
};
AlphaE alpha_of_ext(const MulChar& Xi);  // extension-kind, c(Xi) >= 1

// alpha for the pair: product of the two GL(1) alphas (principal series) or
// the norm of the extension alpha (supercuspidal).
LocalElt alpha_pair_ps(const AlphaF& a, const AlphaF& b);
LocalElt alpha_pair_sc(const AlphaE& a);

}  // namespace rc
