#pragma once
// Wavepackets 1_tau^T (T = w^{-N}) and the microlocal operators:
//   op_plus  : multiplication by the indicator 1_O(T^{-1} h - tau_y)
//   op_zero  : average over u of psi(-u tau_x) pi(a(exp(w^N u)))
//   op_minus : w o op_plus(tau_z) o w
//   op_full  : op_minus . op_zero . op_plus (the three commute)
// plus the exact 2x2 star-product (log of exp-products) and a direct
// integral-over-the-congruence-Lie-algebra oracle for op_full.
//
// Sign convention (reported as +1 in all outputs): the dual symbol pairs with
// psi(-<x, T tau>), which localizes the raised operator at +T tau_y and the
// averaged diagonal operator at +alpha_chi.

#include "relchar/kirillov.hpp"

namespace rc {

struct Wavepacket {
  int N = 0;
  LocalElt tau_x, tau_y, tau_z;  // representatives mod T k(0)^perp = O
  cplx coeff = 1.0;

  int r() const { return (tau_y.is_zero() || tau_y.v >= 0) ? 0 : -tau_y.v; }
  int s() const { return (tau_z.is_zero() || tau_z.v >= 0) ? 0 : -tau_z.v; }
};

struct WavepacketSum {
  int N = 0;
  std::vector<Wavepacket> terms;
};

// samples: (tau_x, tau_y, tau_z, value) on coset representatives
WavepacketSum wavepacket_decompose(
    const std::vector<std::tuple<LocalElt, LocalElt, LocalElt, cplx>>& samples, int N);
// evaluate the packet-sum symbol at a phase-space point (exact reconstruction)
cplx wavepacket_eval(const WavepacketSum& a, const LocalElt& xx, const LocalElt& xy,
                     const LocalElt& xz);

// in the ball B(T tau, T) coordinatewise, i.e. v(xi - T tau) >= -N
bool in_ball(const LocalElt& xi, const LocalElt& tau, int N);

KirillovVec op_plus(const LocalElt& tau_y, int N, const KirillovVec& W);
CharVec op_plus(const LocalElt& tau_y, int N, const CharVec& W);
KirillovVec op_zero(const LocalElt& tau_x, int N, const KirillovVec& W);
CharVec op_zero(const LocalElt& tau_x, int N, const CharVec& W);
KirillovVec op_minus(const LocalElt& tau_z, int N, const RepCtx& rep, const KirillovVec& W);
CharVec op_minus(const LocalElt& tau_z, int N, const RepCtx& rep, const CharVec& W);
KirillovVec op_full(const Wavepacket& a, const RepCtx& rep, const KirillovVec& W);
CharVec op_full(const Wavepacket& a, const RepCtx& rep, const CharVec& W);

// exp(w^N u) as a unit code mod p^Mtot (exact p-adic exponential series)
long long exp_unit(int p, int N, long long u, int Mtot);

// ---- exact 2x2 traceless matrix calculus mod p^mm ----
struct Mat2 {
  long long a = 0, b = 0, c = 0, d = 0;
};
Mat2 mat_mul(int p, int mm, const Mat2& x, const Mat2& y);
Mat2 mat_exp_padic(int p, int mm, const Mat2& x);  // entries of x in pO
Mat2 mat_log_padic(int p, int mm, const Mat2& g);  // g = 1 + (entries in pO)
Mat2 star(int p, int mm, const Mat2& x, const Mat2& y);  // log(exp x exp y)
// <x, xi> phase for xi = p^{-m} * integer matrix (trace pairing, exact)
Frac pair_phase(int p, const Mat2& x, const Mat2& xi_num, int m);

// direct-integral oracle: (1/#grid) sum over x in k(N)/k(mw) of
// psi(-<x, T tau>) pi(exp x) W, with pi(exp x) through the Bruhat
// factorization n(b/d) a(det/d^2) nbar(c/d).  Independent of op_plus/zero.
KirillovVec op_direct_oracle(const Wavepacket& a, const RepCtx& rep, const KirillovVec& W,
                             int mw);

}  // namespace rc
