#include "relchar/ring.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <mutex>
#include <numeric>

namespace rc {

namespace {

using i128 = __int128;

long long mod_pos(i128 x, long long m) {
  long long r = (long long)(x % m);
  return r < 0 ? r + m : r;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int vp(long long x, int p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (v < cap && x % p == 0) { x /= p; ++v; }
  return v;
}

std::vector<std::pair<long long, int>> factorize(long long n) {
  std::vector<std::pair<long long, int>> fac;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) { n /= d; ++e; }
      fac.push_back({d, e});
    }
  }
  if (n > 1) fac.push_back({n, 1});
  return fac;
}

// Basis of the Sylow ell-subgroup S (given as a deduped list of codes, all of
// ell-power order).  Greedy: repeatedly take an element of maximal order not
// yet in the spanned subgroup and split it off as a new direct factor.
void sylow_basis(const Ring& R, long long ell, const std::vector<long long>& S,
                 std::vector<long long>& gens, std::vector<long long>& orders) {
  std::unordered_map<long long, std::vector<int>> span;
  span[R.one()] = {};
  std::vector<long long> basis, bord;
  while (span.size() < S.size()) {
    // element of maximal order outside the current span
    long long best = -1, bestord = 0;
    for (long long x : S) {
      if (span.count(x)) continue;
      long long o = 1, y = x;
      while (y != R.one()) { y = R.pow(y, ell); o *= ell; }
      if (o > bestord) { bestord = o; best = x; }
    }
    assert(best != -1);
    // minimal j with best^(ell^j) in span
    long long x = best, po = 1;
    while (!span.count(x)) { x = R.pow(x, ell); po *= ell; }
    const std::vector<int>& a = span[x];  // x = prod gens^a
    // y = best * prod gens^{-a_i/po} has order exactly po and
    // <span> + <y> is direct.  Divisibility holds because basis orders are
    // found in decreasing order (structure theorem).
    long long y = best;
    for (size_t i = 0; i < basis.size(); ++i) {
      long long ai = a.size() > i ? a[i] : 0;
      assert(ai % po == 0);
      long long k = mod_pos(-(i128)(ai / po), bord[i]);
      y = R.mul(y, R.pow(basis[i], k));
    }
    // extend the span table with powers of y
    std::vector<std::pair<long long, std::vector<int>>> old(span.begin(), span.end());
    long long yt = R.one();
    for (long long t = 1; t < po; ++t) {
      yt = R.mul(yt, y);
      for (auto& [c, ex] : old) {
        std::vector<int> e2 = ex;
        e2.resize(basis.size() + 1, 0);
        e2[basis.size()] = (int)t;
        span[R.mul(c, yt)] = std::move(e2);
      }
    }
    for (auto& [c, ex] : span) ex.resize(basis.size() + 1, 0);
    basis.push_back(y);
    bord.push_back(po);
  }
  for (size_t i = 0; i < basis.size(); ++i) {
    gens.push_back(basis[i]);
    orders.push_back(bord[i]);
  }
}

void build_unit_group(Ring& R) {
  long long n = R.nunits;
  auto fac = factorize(n);
  std::sort(fac.begin(), fac.end());
  for (auto [ell, e] : fac) {
    long long co = n;
    for (int i = 0; i < e; ++i) co /= ell;
    // Sylow subgroup = image of x -> x^{n/ell^e}
    std::vector<long long> S;
    {
      std::unordered_map<long long, bool> seen;
      for (long long u : R.units) {
        long long y = R.pow(u, co);
        if (!seen.count(y)) { seen[y] = true; S.push_back(y); }
      }
      std::sort(S.begin(), S.end());
    }
    sylow_basis(R, ell, S, R.gens, R.gen_order);
  }
  // Full discrete-log table by odometer enumeration of exponent vectors.
  size_t k = R.gens.size();
  std::vector<int> ex(k, 0);
  long long total = 1;
  for (long long o : R.gen_order) total *= o;
  assert(total == n);
  std::vector<long long> cur(k + 1, R.one());
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == k) {
      auto [it, fresh] = R.dlog.insert({cur[k], ex});
      (void)it;
      assert(fresh && "unit group basis is not a direct decomposition");
      return;
    }
    long long g = R.gens[i];
    cur[i + 1] = cur[i];
    for (int t = 0; t < R.gen_order[i]; ++t) {
      ex[i] = t;
      rec(i + 1);
      cur[i + 1] = R.mul(cur[i + 1], g);
    }
  };
  rec(0);
  assert((long long)R.dlog.size() == n);
}

}  // namespace

long long least_nonresidue(int p) {
  for (long long a = 2; a < p; ++a) {
    long long s = 1;
    for (int e = 0; e < (p - 1) / 2; ++e) s = s * a % p;
    if (s == p - 1) return a;
  }
  throw std::logic_error("no quadratic non-residue found");
}

long long Ring::from_pair(long long a, long long b) const {
  a %= pm; if (a < 0) a += pm;
  b %= pm; if (b < 0) b += pm;
  if (kind == RingKind::Base) return a;
  return a + pm * b;
}

std::pair<long long, long long> Ring::to_pair(long long x) const {
  if (kind == RingKind::Base) return {x, 0};
  return {x % pm, x / pm};
}

long long Ring::add(long long x, long long y) const {
  auto [a, b] = to_pair(x);
  auto [c, d] = to_pair(y);
  return from_pair(a + c, b + d);
}

long long Ring::sub(long long x, long long y) const {
  auto [a, b] = to_pair(x);
  auto [c, d] = to_pair(y);
  return from_pair(a - c, b - d);
}

long long Ring::neg(long long x) const {
  auto [a, b] = to_pair(x);
  return from_pair(-a, -b);
}

long long Ring::mul(long long x, long long y) const {
  auto [a, b] = to_pair(x);
  auto [c, d] = to_pair(y);
  if (kind == RingKind::Base) return mod_pos((i128)a * c, pm);
  long long w2 = (kind == RingKind::Unram) ? nonres : p;  // w^2
  long long re = mod_pos((i128)a * c + (i128)w2 * b % pm * d, pm);
  long long im = mod_pos((i128)a * d + (i128)b * c, pm);
  return from_pair(re, im);
}

long long Ring::pow(long long x, long long k) const {
  long long r = one();
  while (k > 0) {
    if (k & 1) r = mul(r, x);
    x = mul(x, x);
    k >>= 1;
  }
  return r;
}

long long Ring::inv(long long x) const {
  if (!is_unit(x)) throw std::domain_error("Ring::inv: not a unit");
  return pow(x, nunits - 1);
}

int Ring::val(long long x) const {
  auto [a, b] = to_pair(x);
  switch (kind) {
    case RingKind::Base:  return vp(a, p, m);
    case RingKind::Unram: return std::min(vp(a, p, m), vp(b, p, m));
    case RingKind::Ram:   return std::min(2 * vp(a, p, m), 2 * vp(b, p, m) + 1);
  }
  throw std::logic_error("unreachable");
}

long long Ring::uniformizer() const {
  if (kind == RingKind::Ram) return from_pair(0, 1);
  return from_pair(p % pm, 0);
}

long long Ring::conj(long long x) const {
  auto [a, b] = to_pair(x);
  return from_pair(a, -b);
}

long long Ring::norm(long long x) const {
  auto [a, b] = to_pair(x);
  if (kind == RingKind::Base) return a;
  long long w2 = (kind == RingKind::Unram) ? nonres : p;
  return mod_pos((i128)a * a - (i128)w2 * b % pm * b, pm);
}

long long Ring::trace(long long x) const {
  auto [a, b] = to_pair(x);
  (void)b;
  if (kind == RingKind::Base) return mod_pos(2 * (i128)a, pm);
  return mod_pos(2 * (i128)a, pm);
}

long long Ring::reduce_from(const Ring& fine, long long x) const {
  if (fine.kind != kind || fine.p != p || fine.m < m)
    throw std::invalid_argument("Ring::reduce_from: incompatible rings");
  auto [a, b] = fine.to_pair(x);
  return from_pair(a % pm, b % pm);
}

const Ring& ring_make(int p, RingKind kind, int m) {
  static std::map<std::tuple<int, int, int>, Ring> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(p, (int)kind, m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  if (p < 3 || p % 2 == 0 || m < 1) throw std::invalid_argument("ring_make: need odd p, m >= 1");
  Ring R;
  R.kind = kind;
  R.p = p;
  R.m = m;
  R.pm = ipow(p, m);
  switch (kind) {
    case RingKind::Base:  R.e = 1; R.f = 1; break;
    case RingKind::Unram: R.e = 1; R.f = 2; R.nonres = least_nonresidue(p); break;
    case RingKind::Ram:   R.e = 2; R.f = 1; break;
  }
  R.q = ipow(p, R.f);

  long long codes = (kind == RingKind::Base) ? R.pm : R.pm * R.pm;
  for (long long x = 0; x < codes; ++x)
    if (R.val(x) == 0) R.units.push_back(x);
  R.nunits = (long long)R.units.size();
  for (int i = 0; i < R.nunits; ++i) R.unit_index[R.units[i]] = i;

  build_unit_group(R);
  auto [pos, fresh] = cache.emplace(key, std::move(R));
  (void)fresh;
  return pos->second;
}

}  // namespace rc
