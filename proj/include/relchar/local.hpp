#pragma once
// Truncated elements of the base local field (p-adic numbers at desk scale)
// and the standard additive character psi of conductor O.
//
// A LocalElt is x = p^v * u with u a unit known mod p^prec (prec > 0), or the
// exact zero.  Additions can lose precision; we track it honestly and throw
// if a computation ever needs digits that are not there.

#include <stdexcept>

#include "relchar/frac.hpp"
#include "relchar/ring.hpp"

namespace rc {

struct LocalElt {
  int p = 0;
  bool zero = true;
  int v = 0;          // valuation
  long long u = 1;    // unit part, 0 < u < p^prec, u % p != 0
  int prec = 0;       // unit known mod p^prec

  static LocalElt zero_elt(int p) { LocalElt x; x.p = p; return x; }
  static LocalElt make(int p, int v, long long u, int prec);
  static LocalElt from_int(int p, long long n, int prec);  // n as element of Q_p

  bool is_zero() const { return zero; }
  // |x| = q^{-v} as an exact power; valuation accessor with infinity guard.
  int val() const {
    if (zero) throw std::domain_error("LocalElt: valuation of zero");
    return v;
  }
};

LocalElt le_mul(const LocalElt& a, const LocalElt& b);
LocalElt le_div(const LocalElt& a, const LocalElt& b);
LocalElt le_inv(const LocalElt& a);
LocalElt le_neg(const LocalElt& a);
LocalElt le_add(const LocalElt& a, const LocalElt& b);
LocalElt le_sub(const LocalElt& a, const LocalElt& b);
// multiply by p^k
LocalElt le_shift(const LocalElt& a, int k);

// phase of psi(x) as an exact rational: frac(p^v u) mod 1.
Frac psi_phase(const LocalElt& x);
inline cplx psi_eval(const LocalElt& x) { return unit_from_phase(psi_phase(x)); }

// Additive Haar volume of the ball u + p^k O: q^{-k}, exact.
inline Frac haar_volume_add(int p, int k) {
  long long pk = 1;
  for (int i = 0; i < (k > 0 ? k : 0); ++i) pk *= p;
  if (k >= 0) return Frac(1, pk);
  long long pk2 = 1;
  for (int i = 0; i < -k; ++i) pk2 *= p;
  return Frac(pk2, 1);
}

// ---- scaled extension-ring elements: x = w^{-k} * c with c a ring code ----
// Used for alpha over the quadratic extension E and for the additive
// character psi_E = psi o Tr, whose level is d_E = e - 1 (trivial on
// w^{-d_E} O_E but not on w^{-d_E-1} O_E).

struct ExtScaled {
  const Ring* R = nullptr;
  int k = 0;          // element is w^{-k} * code
  long long code = 0;
};

// phase of psi_E(w^{-k} c) via the closed trace forms; requires the ring to
// carry enough w-digits (asserted).
Frac psiE_phase(const Ring& R, int k, long long code);

// exact rational trace pairing <x, xi> = psi-phase of the product of a base
// LocalElt and nothing else -- the 2x2 Lie-coordinate pairing lives in the
// operator-calculus layer; here we expose Tr(w^{-k} c) as a base LocalElt.
LocalElt ext_trace_down(const Ring& R, int k, long long code, int prec);
// Nm(w^{-k} c) as a base LocalElt (prec bounds how many base digits of the
// norm unit are trusted).
LocalElt ext_norm_down(const Ring& R, int k, long long code, int prec);

}  // namespace rc
