#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "relchar/ring.hpp"

using namespace rc;

static long long ipow(long long b, int e) { long long r = 1; while (e--) r *= b; return r; }

TEST_CASE("unit counts match the closed formulas") {
  for (int p : {3, 5}) {
    for (int m = 1; m <= 3; ++m) {
      const Ring& B = ring_make(p, RingKind::Base, m);
      CHECK(B.nunits == ipow(p, m - 1) * (p - 1));
      const Ring& U = ring_make(p, RingKind::Unram, m);
      CHECK(U.nunits == ipow(p, 2 * (m - 1)) * (p * p - 1));
      const Ring& E = ring_make(p, RingKind::Ram, m);
      CHECK(E.nunits == ipow(p, 2 * m - 1) * (p - 1));
    }
  }
}

TEST_CASE("basis orders multiply to the group order and dlog is a bijection") {
  for (int p : {3, 5}) {
    for (RingKind k : {RingKind::Base, RingKind::Unram, RingKind::Ram}) {
      const Ring& R = ring_make(p, k, 2);
      long long prod = 1;
      for (long long o : R.gen_order) prod *= o;
      CHECK(prod == R.nunits);
      CHECK((long long)R.dlog.size() == R.nunits);
      // each generator really has the claimed order
      for (size_t i = 0; i < R.gens.size(); ++i) {
        CHECK(R.pow(R.gens[i], R.gen_order[i]) == R.one());
        long long ell = 2;
        long long o = R.gen_order[i];
        while (o % ell != 0) ++ell;
        CHECK(R.pow(R.gens[i], R.gen_order[i] / ell) != R.one());
      }
    }
  }
}

TEST_CASE("dlog reproduces multiplication (exhaustive, p=3)") {
  const Ring& R = ring_make(3, RingKind::Ram, 2);
  for (long long x : R.units) {
    for (long long y : R.units) {
      long long z = R.mul(x, y);
      const auto& dx = R.dlog_of(x);
      const auto& dy = R.dlog_of(y);
      const auto& dz = R.dlog_of(z);
      for (size_t i = 0; i < R.gens.size(); ++i)
        CHECK((dx[i] + dy[i]) % R.gen_order[i] == dz[i]);
    }
  }
}

TEST_CASE("valuation, uniformizer, and total code structure") {
  for (int p : {3, 5}) {
    const Ring& E = ring_make(p, RingKind::Ram, 2);
    long long w = E.uniformizer();
    CHECK(E.val(w) == 1);
    CHECK(E.val(E.mul(w, w)) == 2);
    CHECK(E.mul(w, w) == E.from_pair(p, 0));  // w^2 = p
    const Ring& U = ring_make(p, RingKind::Unram, 2);
    long long wu = U.from_pair(0, 1);
    CHECK(U.mul(wu, wu) == U.from_pair(U.nonres, 0));
    CHECK(U.val(wu) == 0);
    CHECK(U.val(U.from_pair(p, p)) == 1);
    // every nonzero code has val < wdigits; counts per shell are consistent
    std::set<int> vals;
    long long codes = E.pm * E.pm;
    std::vector<long long> shell(E.wdigits() + 1, 0);
    for (long long x = 0; x < codes; ++x) shell[E.val(x)]++;
    for (int v = 0; v + 1 < E.wdigits(); ++v)
      CHECK(shell[v] == shell[v + 1] * p);  // |shell v| = q_E^... geometric
  }
}

TEST_CASE("norm, trace, conjugation") {
  for (int p : {3, 5}) {
    for (RingKind k : {RingKind::Unram, RingKind::Ram}) {
      const Ring& R = ring_make(p, k, 2);
      const Ring& B = ring_make(p, RingKind::Base, 2);
      for (long long x : R.units) {
        // Nm(x) = x * conj(x), Tr(x) = x + conj(x), both in the base ring
        long long nx = R.mul(x, R.conj(x));
        auto [na, nb] = R.to_pair(nx);
        CHECK(nb == 0);
        CHECK(na == R.norm(x));
        long long tx = R.add(x, R.conj(x));
        auto [ta, tb] = R.to_pair(tx);
        CHECK(tb == 0);
        CHECK(ta == R.trace(x));
        // multiplicativity of the norm against a fixed element
        long long y = R.units[7 % R.units.size()];
        CHECK(B.mul(R.norm(x), R.norm(y)) == R.norm(R.mul(x, y)));
      }
    }
  }
}

TEST_CASE("inverse and reduce_from") {
  const Ring& R2 = ring_make(3, RingKind::Unram, 2);
  const Ring& R3 = ring_make(3, RingKind::Unram, 3);
  for (long long x : R2.units) CHECK(R2.mul(x, R2.inv(x)) == R2.one());
  for (long long x : R3.units) {
    long long r = R2.reduce_from(R3, x);
    CHECK(R2.is_unit(r));
    CHECK(R2.reduce_from(R3, R3.mul(x, x)) == R2.mul(r, r));
  }
}

TEST_CASE("norm maps units onto the expected subgroup index") {
  // Nm: O_E^x -> O_F^x is onto for unramified E; index-2 image signature for
  // ramified E is through F^x including the uniformizer, but on units the
  // image of the ramified norm is the squares times norms structure; here we
  // just pin surjectivity for Unram (local class field theory, unit part).
  for (int p : {3, 5}) {
    const Ring& R = ring_make(p, RingKind::Unram, 2);
    const Ring& B = ring_make(p, RingKind::Base, 2);
    std::set<long long> image;
    for (long long x : R.units) image.insert(R.norm(x));
    CHECK((long long)image.size() == B.nunits);
  }
}
