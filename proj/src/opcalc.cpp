#include "relchar/opcalc.hpp"

#include <cassert>

namespace rc {

namespace {
long long ipow(long long b, int e) { long long r = 1; while (e-- > 0) r *= b; return r; }
long long mod_pos(__int128 x, long long m) {
  long long r = (long long)(x % m);
  return r < 0 ? r + m : r;
}
long long inv_unit_mod(long long u, int p, long long pm) {
  long long phi = pm / p * (p - 1), r = 1, x = u % pm, k = phi - 1;
  while (k > 0) {
    if (k & 1) r = mod_pos((__int128)r * x, pm);
    x = mod_pos((__int128)x * x, pm);
    k >>= 1;
  }
  return r;
}
int vp_ll(long long x, int p) { int v = 0; while (x % p == 0) { x /= p; ++v; } return v; }
}  // namespace

bool in_ball(const LocalElt& xi, const LocalElt& tau, int N) {
  LocalElt d = le_sub(xi, tau);
  return d.is_zero() || d.v >= -N;
}

WavepacketSum wavepacket_decompose(
    const std::vector<std::tuple<LocalElt, LocalElt, LocalElt, cplx>>& samples, int N) {
  WavepacketSum out;
  out.N = N;
  for (const auto& [tx, ty, tz, v] : samples) {
    if (v == 0.0) continue;
    Wavepacket w;
    w.N = N;
    w.tau_x = tx;
    w.tau_y = ty;
    w.tau_z = tz;
    w.coeff = v;
    out.terms.push_back(w);
  }
  return out;
}

cplx wavepacket_eval(const WavepacketSum& a, const LocalElt& xx, const LocalElt& xy,
                     const LocalElt& xz) {
  // symbol value at (xx, xy, xz) in T-scaled coordinates: the packet 1_tau^T
  // is the indicator of B(T tau, T) and we evaluate at (T xx', ...) given
  // directly as field elements
  cplx s = 0;
  for (const Wavepacket& w : a.terms) {
    LocalElt Ttx = le_shift(w.tau_x, -a.N), Tty = le_shift(w.tau_y, -a.N),
             Ttz = le_shift(w.tau_z, -a.N);
    if (in_ball(xx, Ttx, a.N) && in_ball(xy, Tty, a.N) && in_ball(xz, Ttz, a.N))
      s += w.coeff;
  }
  return s;
}

KirillovVec op_plus(const LocalElt& tau_y, int N, const KirillovVec& W) {
  KirillovVec out;
  out.C = W.C;
  const KirillovCtx& C = *W.C;
  for (const auto& [n, f] : W.sh) {
    // multiplier at h = w^n u:  1_O(w^{N+n} u - tau_y)
    if (tau_y.is_zero() || tau_y.v >= 0) {
      if (n + N >= 0) out.shell(n) = f;
      continue;
    }
    int r = -tau_y.v;
    if (n != -N - r) continue;
    auto& g = out.shell(n);
    long long pr = ipow(C.p, r);
    for (long long j = 0; j < C.nu; ++j)
      if (C.RM->units[j] % pr == tau_y.u % pr) g[j] = f[j];
  }
  return out;
}

CharVec op_plus(const LocalElt& tau_y, int N, const CharVec& W) {
  CharVec out;
  out.C = W.C;
  const KirillovCtx& C = *W.C;
  if (tau_y.is_zero() || tau_y.v >= 0) {
    for (const auto& [key, coef] : W.c)
      if (key.first + N >= 0) out.add(key.first, key.second, coef);
    return out;
  }
  int r = -tau_y.v;
  if (r > C.M) throw std::runtime_error("op_plus: unit precision M below r");
  std::vector<int> Xr = C.X_sub(r);
  long long u0 = C.RM->unit_index.at(tau_y.u % C.RM->pm);
  double inv = 1.0 / (double)Xr.size();
  for (const auto& [key, coef] : W.c) {
    if (key.first != -N - r) continue;
    for (int om : Xr)
      out.add(key.first, C.chmul(key.second, om),
              coef * inv * std::conj(C.chval[om][u0]));
  }
  out.prune();
  return out;
}

long long exp_unit(int p, int N, long long u, int Mtot) {
  if (N < 1) throw std::invalid_argument("exp_unit: need N >= 1");
  long long pm = ipow(p, Mtot);
  long long acc = 1;  // k = 0 term
  long long kfact_unit = 1;
  int kfact_val = 0;
  long long upow = 1;
  for (int k = 1;; ++k) {
    kfact_val += vp_ll(k, p);
    long long kk = k;
    while (kk % p == 0) kk /= p;
    kfact_unit = mod_pos((__int128)kfact_unit * kk, pm);
    if ((long long)k * N - kfact_val >= Mtot) break;
    upow = mod_pos((__int128)upow * u, pm);
    long long pw = ipow(p, k * N - kfact_val);
    long long term = mod_pos((__int128)pw * upow % pm * inv_unit_mod(kfact_unit, p, pm), pm);
    acc = (acc + term) % pm;
  }
  return acc;
}

namespace {
// shared setup for op_zero: the averaging order and tables
struct ZeroAvg {
  long long count;
  std::vector<long long> eu;   // exp(w^N u) unit codes mod p^M
  std::vector<Frac> phase;     // phase of psi(-u tau_x)
};
ZeroAvg zero_avg(const KirillovCtx& C, const LocalElt& tau_x, int N) {
  int mu = std::max(1, C.M - N);
  if (!tau_x.is_zero()) mu = std::max(mu, -tau_x.v);
  ZeroAvg Z;
  Z.count = ipow(C.p, mu);
  Z.eu.resize(Z.count);
  Z.phase.resize(Z.count);
  for (long long u = 0; u < Z.count; ++u) {
    Z.eu[u] = exp_unit(C.p, N, u, C.M);
    if (tau_x.is_zero() || u == 0) {
      Z.phase[u] = Frac(0);
    } else {
      LocalElt x = le_mul(tau_x, LocalElt::from_int(C.p, u, mu + 1));
      Z.phase[u] = (Frac(0) - psi_phase(x)).mod1();
    }
  }
  return Z;
}
}  // namespace

KirillovVec op_zero(const LocalElt& tau_x, int N, const KirillovVec& W) {
  const KirillovCtx& C = *W.C;
  ZeroAvg Z = zero_avg(C, tau_x, N);
  KirillovVec out;
  out.C = W.C;
  double inv = 1.0 / (double)Z.count;
  for (long long u = 0; u < Z.count; ++u) {
    LocalElt t = LocalElt::make(C.p, 0, Z.eu[u], C.M);
    KirillovVec a = act_diag(t, W);
    cplx ph = unit_from_phase(Z.phase[u]) * inv;
    for (const auto& [n, f] : a.sh) {
      auto& g = out.shell(n);
      for (long long j = 0; j < C.nu; ++j) g[j] += ph * f[j];
    }
  }
  out.prune();
  return out;
}

CharVec op_zero(const LocalElt& tau_x, int N, const CharVec& W) {
  const KirillovCtx& C = *W.C;
  ZeroAvg Z = zero_avg(C, tau_x, N);
  CharVec out;
  out.C = W.C;
  double inv = 1.0 / (double)Z.count;
  std::map<int, cplx> factor;  // per character: the averaged eigenvalue
  for (const auto& [key, coef] : W.c) {
    auto it = factor.find(key.second);
    if (it == factor.end()) {
      cplx s = 0;
      for (long long u = 0; u < Z.count; ++u)
        s += unit_from_phase(Z.phase[u]) * C.chval[key.second][C.RM->unit_index.at(Z.eu[u])];
      it = factor.insert({key.second, s * inv}).first;
    }
    out.add(key.first, key.second, coef * it->second);
  }
  out.prune();
  return out;
}

KirillovVec op_minus(const LocalElt& tau_z, int N, const RepCtx& rep, const KirillovVec& W) {
  return weyl(rep, op_plus(tau_z, N, weyl(rep, W)));
}

CharVec op_minus(const LocalElt& tau_z, int N, const RepCtx& rep, const CharVec& W) {
  return weyl(rep, op_plus(tau_z, N, weyl(rep, W)));
}

KirillovVec op_full(const Wavepacket& a, const RepCtx& rep, const KirillovVec& W) {
  KirillovVec v = op_minus(a.tau_z, a.N, rep, op_zero(a.tau_x, a.N, op_plus(a.tau_y, a.N, W)));
  if (a.coeff != cplx(1.0))
    for (auto& [n, f] : v.sh)
      for (auto& x : f) x *= a.coeff;
  return v;
}

CharVec op_full(const Wavepacket& a, const RepCtx& rep, const CharVec& W) {
  CharVec v = op_minus(a.tau_z, a.N, rep, op_zero(a.tau_x, a.N, op_plus(a.tau_y, a.N, W)));
  if (a.coeff != cplx(1.0))
    for (auto& [k, x] : v.c) x *= a.coeff;
  return v;
}

Mat2 mat_mul(int p, int mm, const Mat2& x, const Mat2& y) {
  long long pm = ipow(p, mm);
  Mat2 z;
  z.a = mod_pos((__int128)x.a * y.a + (__int128)x.b * y.c, pm);
  z.b = mod_pos((__int128)x.a * y.b + (__int128)x.b * y.d, pm);
  z.c = mod_pos((__int128)x.c * y.a + (__int128)x.d * y.c, pm);
  z.d = mod_pos((__int128)x.c * y.b + (__int128)x.d * y.d, pm);
  return z;
}

namespace {
// divide a matrix with all entries divisible by p^t, exactly
Mat2 mat_div_pow(const Mat2& x, long long pt) {
  auto dv = [&](long long v) {
    if (v % pt != 0) throw std::runtime_error("mat_div_pow: inexact division");
    return v / pt;
  };
  return Mat2{dv(x.a), dv(x.b), dv(x.c), dv(x.d)};
}
Mat2 mat_scale_inv_unit(int p, long long pm, const Mat2& x, long long unit) {
  long long iv = inv_unit_mod(unit, p, pm);
  return Mat2{mod_pos((__int128)x.a * iv, pm), mod_pos((__int128)x.b * iv, pm),
              mod_pos((__int128)x.c * iv, pm), mod_pos((__int128)x.d * iv, pm)};
}
Mat2 mat_add(const Mat2& x, const Mat2& y, long long pm) {
  return Mat2{(x.a + y.a) % pm, (x.b + y.b) % pm, (x.c + y.c) % pm, (x.d + y.d) % pm};
}
int mat_min_val(const Mat2& x, int p, int cap) {
  auto v = [&](long long e) { return e == 0 ? cap : vp_ll(e == 0 ? 1 : e, p); };
  int m = cap;
  for (long long e : {x.a, x.b, x.c, x.d})
    if (e != 0) m = std::min(m, v(e));
  return m;
}
}  // namespace

Mat2 mat_exp_padic(int p, int mm, const Mat2& x) {
  // guard digits cover the p-part of k! for every contributing k
  int G = 4;
  long long pm = ipow(p, mm + G);
  int N = mat_min_val(x, p, mm + G);
  if (N < 1) throw std::invalid_argument("mat_exp_padic: entries must be in pO");
  Mat2 xg{x.a, x.b, x.c, x.d};
  Mat2 acc{1, 0, 0, 1};
  Mat2 pw{1, 0, 0, 1};
  long long kfact_unit = 1;
  int kfact_val = 0;
  for (int k = 1;; ++k) {
    kfact_val += vp_ll(k, p);
    long long kk = k;
    while (kk % p == 0) kk /= p;
    kfact_unit = mod_pos((__int128)kfact_unit * kk, pm);
    if (k * N - kfact_val >= mm) break;
    if (kfact_val > G) throw std::runtime_error("mat_exp_padic: guard digits exhausted");
    pw = mat_mul(p, mm + G, pw, xg);
    Mat2 t = mat_div_pow(pw, ipow(p, kfact_val));
    t = mat_scale_inv_unit(p, pm, t, kfact_unit);
    acc = mat_add(acc, t, pm);
  }
  long long pmm = ipow(p, mm);
  return Mat2{acc.a % pmm, acc.b % pmm, acc.c % pmm, acc.d % pmm};
}

Mat2 mat_log_padic(int p, int mm, const Mat2& g) {
  int G = 4;
  long long pm = ipow(p, mm + G);
  Mat2 z{mod_pos(g.a - 1, pm), g.b % pm, g.c % pm, mod_pos(g.d - 1, pm)};
  int N = mat_min_val(z, p, mm + G);
  if (N < 1) throw std::invalid_argument("mat_log_padic: g must be 1 + pO entries");
  Mat2 acc{0, 0, 0, 0};
  Mat2 pw{1, 0, 0, 1};
  for (int k = 1;; ++k) {
    int kv = vp_ll(k, p);
    if (k * N - kv >= mm) break;
    if (kv > G) throw std::runtime_error("mat_log_padic: guard digits exhausted");
    pw = mat_mul(p, mm + G, pw, z);
    Mat2 t = mat_div_pow(pw, ipow(p, kv));
    long long ku = k;
    while (ku % p == 0) ku /= p;
    t = mat_scale_inv_unit(p, pm, t, ku);
    if (k % 2 == 0) {  // alternating signs: log(1+z) = z - z^2/2 + ...
      t = Mat2{mod_pos(-t.a, pm), mod_pos(-t.b, pm), mod_pos(-t.c, pm), mod_pos(-t.d, pm)};
    }
    acc = mat_add(acc, t, pm);
  }
  long long pmm = ipow(p, mm);
  return Mat2{acc.a % pmm, acc.b % pmm, acc.c % pmm, acc.d % pmm};
}

Mat2 star(int p, int mm, const Mat2& x, const Mat2& y) {
  Mat2 gx = mat_exp_padic(p, mm, x);
  Mat2 gy = mat_exp_padic(p, mm, y);
  return mat_log_padic(p, mm, mat_mul(p, mm, gx, gy));
}

Frac pair_phase(int p, const Mat2& x, const Mat2& xi_num, int m) {
  if (m <= 0) return Frac(0);
  long long pm = ipow(p, m);
  long long tr = mod_pos((__int128)x.a * xi_num.a + (__int128)x.b * xi_num.c +
                             (__int128)x.c * xi_num.b + (__int128)x.d * xi_num.d,
                         pm);
  return Frac(tr, pm);
}

KirillovVec op_direct_oracle(const Wavepacket& a, const RepCtx& rep, const KirillovVec& W,
                             int mw) {
  const KirillovCtx& C = *W.C;
  int p = C.p, N = a.N;
  long long side = ipow(p, mw - N);
  long long pN = ipow(p, N);
  // T tau components as field elements
  LocalElt Ttx = le_shift(a.tau_x, -N), Tty = le_shift(a.tau_y, -N),
           Ttz = le_shift(a.tau_z, -N);
  KirillovVec out;
  out.C = &C;
  long long total = side * side * side;
  for (long long idx = 0; idx < total; ++idx) {
    long long ih = idx % side, ib = (idx / side) % side, ic = idx / (side * side);
    long long h = pN * ih, b = pN * ib, c = pN * ic;
    // phase psi(-<x, T tau>) with <x, xi> = h xi_x + b xi_y + c xi_z
    Frac phase(0);
    auto acc = [&](long long coord, const LocalElt& xi) {
      if (coord == 0 || xi.is_zero()) return;
      LocalElt t = le_mul(LocalElt::from_int(p, coord, mw + 2), xi);
      phase = (phase - psi_phase(t)).mod1();
    };
    acc(h, Ttx);
    acc(b, Tty);
    acc(c, Ttz);
    // g = exp([[h, b], [c, -h]]) mod p^mw, then Bruhat-factored action
    long long pmm = ipow(p, mw);
    Mat2 g = mat_exp_padic(p, mw, Mat2{h % pmm, b % pmm, c % pmm, mod_pos(-h, pmm)});
    LocalElt D = LocalElt::from_int(p, g.d, mw);
    LocalElt B = LocalElt::from_int(p, g.b, mw);
    LocalElt Cc = LocalElt::from_int(p, g.c, mw);
    LocalElt det = le_sub(le_mul(LocalElt::from_int(p, g.a, mw), D), le_mul(B, Cc));
    // pi(nbar(C/D)) = w pi(n(-C/D)) w
    KirillovVec v = W;
    LocalElt nv = Cc.is_zero() ? Cc : le_div(Cc, D);
    if (!nv.is_zero()) v = weyl(rep, act_unipotent(le_neg(nv), weyl(rep, v)));
    v = act_diag(le_div(det, le_mul(D, D)), v);
    LocalElt uu = B.is_zero() ? B : le_div(B, D);
    if (!uu.is_zero()) v = act_unipotent(uu, v);
    cplx ph = unit_from_phase(phase) / (double)total;
    for (const auto& [n, f] : v.sh) {
      auto& gsh = out.shell(n);
      for (long long j = 0; j < C.nu; ++j) gsh[j] += ph * f[j];
    }
  }
  out.prune(1e-12);
  if (a.coeff != cplx(1.0))
    for (auto& [n, f] : out.sh)
      for (auto& x : f) x *= a.coeff;
  return out;
}

}  // namespace rc
