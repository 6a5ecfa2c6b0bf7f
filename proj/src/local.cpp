#include "relchar/local.hpp"

namespace rc {

namespace {
long long ipow(long long b, int e) { long long r = 1; while (e-- > 0) r *= b; return r; }
int vp(long long x, int p) { int v = 0; while (x != 0 && x % p == 0) { x /= p; ++v; } return v; }
}  // namespace

LocalElt LocalElt::make(int p, int v, long long u, int prec) {
  if (prec < 1) throw std::invalid_argument("LocalElt::make: prec < 1");
  long long pk = ipow(p, prec);
  u %= pk; if (u < 0) u += pk;
  if (u % p == 0) throw std::invalid_argument("LocalElt::make: unit part divisible by p");
  LocalElt x; x.p = p; x.zero = false; x.v = v; x.u = u; x.prec = prec;
  return x;
}

LocalElt LocalElt::from_int(int p, long long n, int prec) {
  if (n == 0) return zero_elt(p);
  int t = vp(n < 0 ? -n : n, p);
  return make(p, t, n / ipow(p, t), prec);
}

LocalElt le_mul(const LocalElt& a, const LocalElt& b) {
  if (a.zero || b.zero) return LocalElt::zero_elt(a.p);
  int prec = std::min(a.prec, b.prec);
  long long pk = ipow(a.p, prec);
  long long u = (long long)((__int128)a.u * b.u % pk);
  return LocalElt::make(a.p, a.v + b.v, u, prec);
}

LocalElt le_inv(const LocalElt& a) {
  if (a.zero) throw std::domain_error("LocalElt: inverse of zero");
  long long pk = ipow(a.p, a.prec);
  // unit inverse mod p^prec by Euler: u^{phi-1}
  long long phi = pk / a.p * (a.p - 1);
  long long r = 1, x = a.u, k = phi - 1;
  while (k > 0) {
    if (k & 1) r = (long long)((__int128)r * x % pk);
    x = (long long)((__int128)x * x % pk);
    k >>= 1;
  }
  return LocalElt::make(a.p, -a.v, r, a.prec);
}

LocalElt le_div(const LocalElt& a, const LocalElt& b) { return le_mul(a, le_inv(b)); }

LocalElt le_neg(const LocalElt& a) {
  if (a.zero) return a;
  return LocalElt::make(a.p, a.v, ipow(a.p, a.prec) - a.u, a.prec);
}

LocalElt le_add(const LocalElt& a, const LocalElt& b) {
  if (a.zero) return b;
  if (b.zero) return a;
  const LocalElt& lo = (a.v <= b.v) ? a : b;
  const LocalElt& hi = (a.v <= b.v) ? b : a;
  int d = hi.v - lo.v;
  int prec = std::min(lo.prec, hi.prec + d);
  if (d >= prec) {
    // the higher term is invisible at available precision
    return LocalElt::make(lo.p, lo.v, lo.u % ipow(lo.p, prec), prec);
  }
  long long pk = ipow(lo.p, prec);
  long long s = (lo.u + (long long)((__int128)hi.u * ipow(lo.p, d) % pk)) % pk;
  if (s == 0) return LocalElt::zero_elt(lo.p);  // zero to available precision
  int t = vp(s, lo.p);
  if (t >= prec) return LocalElt::zero_elt(lo.p);
  if (prec - t < 1) throw std::runtime_error("LocalElt: precision exhausted in add");
  return LocalElt::make(lo.p, lo.v + t, s / ipow(lo.p, t), prec - t);
}

LocalElt le_sub(const LocalElt& a, const LocalElt& b) { return le_add(a, le_neg(b)); }

LocalElt le_shift(const LocalElt& a, int k) {
  if (a.zero) return a;
  LocalElt x = a; x.v += k; return x;
}

Frac psi_phase(const LocalElt& x) {
  if (x.zero || x.v >= 0) return Frac(0);
  int k = -x.v;
  if (x.prec < k) throw std::runtime_error("psi_phase: unit precision too low");
  long long pk = ipow(x.p, k);
  return Frac(x.u % pk, pk);
}

Frac psiE_phase(const Ring& R, int k, long long code) {
  if (k <= 0) return Frac(0);
  auto [a, b] = R.to_pair(code);
  switch (R.kind) {
    case RingKind::Base: {
      if (R.m < k) throw std::runtime_error("psiE_phase: ring precision too low");
      long long pk = ipow(R.p, k);
      return Frac(a % pk, pk);
    }
    case RingKind::Unram: {
      if (R.m < k) throw std::runtime_error("psiE_phase: ring precision too low");
      long long pk = ipow(R.p, k);
      return Frac((2 * a) % pk, pk);
    }
    case RingKind::Ram: {
      // Tr(w^{-2j}(a+bw)) = 2a/p^j ; Tr(w^{-2j-1}(a+bw)) = 2b/p^j
      int j = k / 2;
      long long c = (k % 2 == 0) ? a : b;
      if (j == 0) return Frac(0);
      if (R.m < j) throw std::runtime_error("psiE_phase: ring precision too low");
      long long pj = ipow(R.p, j);
      return Frac((2 * c) % pj, pj);
    }
  }
  throw std::logic_error("unreachable");
}

LocalElt ext_trace_down(const Ring& R, int k, long long code, int prec) {
  auto [a, b] = R.to_pair(code);
  prec = std::min(prec, R.m);
  switch (R.kind) {
    case RingKind::Base:
      return le_shift(LocalElt::from_int(R.p, a, prec), -k);
    case RingKind::Unram:
      return le_shift(LocalElt::from_int(R.p, 2 * a, prec), -k);
    case RingKind::Ram: {
      int j = k / 2;
      long long c = (k % 2 == 0) ? a : b;
      return le_shift(LocalElt::from_int(R.p, 2 * c, prec), -j);
    }
  }
  throw std::logic_error("unreachable");
}

LocalElt ext_norm_down(const Ring& R, int k, long long code, int prec) {
  prec = std::min(prec, R.m);
  long long n = R.norm(code);
  switch (R.kind) {
    case RingKind::Base:
      return le_shift(LocalElt::from_int(R.p, n, prec), -k);
    case RingKind::Unram:
      return le_shift(LocalElt::from_int(R.p, n, prec), -2 * k);
    case RingKind::Ram: {
      // Nm(w)^{-k} = (-p)^{-k}
      LocalElt x = LocalElt::from_int(R.p, (k % 2 == 0) ? n : -n, prec);
      return le_shift(x, -k);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace rc
