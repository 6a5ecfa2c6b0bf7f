#pragma once
// Phase-space route: the integral of the wavepacket over the hyperbola
//   { xi_x = alpha_chi,  xi_y xi_z = alpha_pair }
// against multiplicative Haar measure d^x xi_y (vol(O^x) = 1), evaluated two
// independent ways: an exact closed form per case, and a lattice sum over
// shell/unit-coset cells at finite depth.  Both are exact rationals.

#include "relchar/relchar.hpp"

namespace rc {

struct HypResult {
  Frac value;          // integral over the xi_y line given the window
  bool window = false; // alpha_chi in B(T tau_x, T)
  Frac total() const { return window ? value : Frac(0); }
};

HypResult hyp_integral_closed(const PairData& pd, const Wavepacket& a);
// depth <= 0 selects max(r, s) + 2 automatically
HypResult hyp_integral_lattice(const PairData& pd, const Wavepacket& a, int depth = 0);

}  // namespace rc
