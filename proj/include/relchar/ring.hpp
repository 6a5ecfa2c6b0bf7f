#pragma once
// Finite residue rings used throughout:
//   Base      : Z/p^m                       (residues of the base field integers)
//   Unram     : (Z/p^m)[w]/(w^2-u)          (u a fixed non-residue; quadratic unramified)
//   Ram       : (Z/p^m)[w]/(w^2-p)          (quadratic ramified, w = uniformizer)
//
// Elements are encoded as a single integer code:
//   Base  : a            with 0 <= a < p^m
//   Unram : a + p^m * b  (element a + b w), 0 <= a,b < p^m
//   Ram   : a + p^m * b  (element a + b w), 0 <= a,b < p^m
//
// For the ramified ring the natural precision unit is the w-digit: the code
// space represents O_E / w^{2m}.  val() always returns the w-adic valuation
// (so for Base/Unram a w-digit equals a p-digit).
//
// The unit group is computed as an abstract finite abelian group: a basis
// g_1,...,g_k with orders d_1 | ... (per-prime decreasing prime-power orders)
// plus a complete discrete-log table code -> exponent vector.  Everything
// downstream (characters, conductors, Gauss sums) works through this table,
// so correctness reduces to the structure checks in the tests.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "relchar/frac.hpp"

namespace rc {

enum class RingKind { Base, Unram, Ram };

struct Ring {
  RingKind kind;
  int p = 0;          // odd prime
  int m = 0;          // base precision: ring is O / p^m (O / w^{2m} for Ram)
  int e = 1, f = 1;   // ramification / residue degree over the base
  long long q = 0;    // residue field size p^f
  long long pm = 0;   // p^m
  long long nonres = 0;  // Unram only: the non-residue u with w^2 = u

  int wdigits() const { return e * m; }  // precision in w-digits

  std::vector<long long> units;                       // all unit codes, sorted
  std::unordered_map<long long, int> unit_index;      // code -> position in `units`
  long long nunits = 0;

  // Finite-abelian structure of the unit group.
  std::vector<long long> gens;        // basis element codes
  std::vector<long long> gen_order;   // prime-power orders, grouped by prime
  std::unordered_map<long long, std::vector<int>> dlog;  // code -> exponents

  // ---- element arithmetic on codes ----
  long long add(long long x, long long y) const;
  long long sub(long long x, long long y) const;
  long long neg(long long x) const;
  long long mul(long long x, long long y) const;
  long long pow(long long x, long long k) const;  // k >= 0
  long long inv(long long x) const;               // x must be a unit
  long long one() const { return 1; }
  long long from_pair(long long a, long long b) const;  // a + b w (b ignored for Base)
  std::pair<long long, long long> to_pair(long long x) const;

  bool is_unit(long long x) const { return unit_index.count(x) != 0; }

  // w-adic valuation of x; returns wdigits() for x == 0 (i.e. "at least").
  int val(long long x) const;

  // Uniformizer of the ring (p for Base/Unram, w for Ram).
  long long uniformizer() const;

  // Galois conjugate a + b w -> a - b w (identity on Base).
  long long conj(long long x) const;
  // Norm and trace down to the base ring Z/p^m (identity/2x on Base).
  long long norm(long long x) const;
  long long trace(long long x) const;

  // Reduce a code of a finer ring of the same kind to this ring's precision.
  long long reduce_from(const Ring& fine, long long x) const;

  const std::vector<int>& dlog_of(long long x) const {
    auto it = dlog.find(x);
    if (it == dlog.end()) throw std::domain_error("Ring: dlog of non-unit");
    return it->second;
  }
};

// Construct (and memoize) a ring.  For Unram the canonical non-residue is the
// smallest quadratic non-residue mod p.
const Ring& ring_make(int p, RingKind kind, int m);

// Smallest quadratic non-residue mod p.
long long least_nonresidue(int p);

}  // namespace rc
