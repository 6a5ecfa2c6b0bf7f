#include "relchar/phase.hpp"

namespace rc {

namespace {
long long ipow(long long b, int e) { long long r = 1; while (e-- > 0) r *= b; return r; }
}

HypResult hyp_integral_closed(const PairData& pd, const Wavepacket& a) {
  int q = pd.chi.R->p;
  int N = a.N, r = a.r(), s = a.s(), c = pd.c_pair;
  if (std::max(r, s) > pd.tau_bound)
    throw std::invalid_argument("hyp_integral_closed: tau depth outside the regime");
  HypResult out;
  out.window = in_ball(pd.alpha_chi.alpha, le_shift(a.tau_x, -N), N);
  auto xsize = [&](int t) { return Frac(1, ipow(q, t - 1) * (q - 1)); };  // vol U(t)
  if (r == 0 && s == 0) {
    // shells v(xi_y) in [-N, N-c], each of d^x-volume 1
    out.value = (2 * N >= c) ? Frac(2 * N - c + 1) : Frac(0);
  } else if (s == 0) {
    out.value = (2 * N + r >= c) ? xsize(r) : Frac(0);
  } else if (r == 0) {
    out.value = (2 * N + s >= c) ? xsize(s) : Frac(0);
  } else {
    LocalElt Tty = le_shift(a.tau_y, -N), Ttz = le_shift(a.tau_z, -N);
    LocalElt ratio = le_div(pd.alpha_pair, le_mul(Tty, Ttz));
    int mn = std::min(r, s), p = q;
    bool ind = false;
    if (!ratio.is_zero() && ratio.v == 0) {
      if (ratio.prec < mn)
        throw std::runtime_error("hyp_integral_closed: alpha_pair precision below min(r,s)");
      ind = (ratio.u - 1) % ipow(p, mn) == 0;
    }
    out.value = ind ? xsize(std::max(r, s)) : Frac(0);
  }
  return out;
}

HypResult hyp_integral_lattice(const PairData& pd, const Wavepacket& a, int depth) {
  int p = pd.chi.R->p;
  int N = a.N, r = a.r(), s = a.s(), c = pd.c_pair;
  if (depth <= 0) depth = std::max(r, s) + 2;
  HypResult out;
  out.window = in_ball(pd.alpha_chi.alpha, le_shift(a.tau_x, -N), N);
  LocalElt Tty = le_shift(a.tau_y, -N), Ttz = le_shift(a.tau_z, -N);
  const Ring& Rd = ring_make(p, RingKind::Base, depth);
  Frac vol(1, Rd.nunits);  // d^x-volume of a unit coset at this depth
  Frac total(0);
  for (int k = -N - r; k <= N + s - c; ++k) {
    for (long long u : Rd.units) {
      LocalElt xy = LocalElt::make(p, k, u, depth);
      if (!in_ball(xy, Tty, N)) continue;
      LocalElt xz = le_div(pd.alpha_pair, xy);
      if (!in_ball(xz, Ttz, N)) continue;
      total = total + vol;
    }
  }
  out.value = total;
  return out;
}

}  // namespace rc
