#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "relchar/characters.hpp"
#include "relchar/local.hpp"

using namespace rc;

static long long ipow(long long b, int e) { long long r = 1; while (e--) r *= b; return r; }

TEST_CASE("LocalElt field arithmetic round-trips") {
  int p = 5;
  LocalElt a = LocalElt::make(p, -2, 7, 4);
  LocalElt b = LocalElt::make(p, 1, 3, 4);
  CHECK(le_mul(a, le_inv(a)).v == 0);
  CHECK(le_mul(a, le_inv(a)).u == 1);
  LocalElt s = le_add(a, b);
  CHECK(s.v == -2);  // dominated by a
  CHECK(le_sub(s, b).u == a.u % ipow(p, le_sub(s, b).prec));
  // cancellation raises valuation
  LocalElt c = le_add(a, le_neg(a));
  CHECK(c.is_zero());
  LocalElt d = le_add(LocalElt::make(p, 0, 1, 4), LocalElt::make(p, 0, 4, 4));  // 1+4=5
  CHECK(d.v == 1);
  CHECK(d.u == 1);
}

TEST_CASE("psi is an additive character of conductor exactly O") {
  int p = 3;
  // trivial on O
  CHECK(psi_phase(LocalElt::from_int(p, 7, 5)) == Frac(0));
  // nontrivial on p^{-1} O
  CHECK(psi_phase(LocalElt::make(p, -1, 1, 4)) == Frac(1, 3));
  // additive: psi(x+y) = psi(x) psi(y) on a sample grid
  for (long long xu = 1; xu < 9; ++xu) {
    if (xu % p == 0) continue;
    for (long long yu = 1; yu < 9; ++yu) {
      if (yu % p == 0) continue;
      LocalElt x = LocalElt::make(p, -2, xu, 5);
      LocalElt y = LocalElt::make(p, -1, yu, 5);
      Frac lhs = psi_phase(le_add(x, y));
      Frac rhs = (psi_phase(x) + psi_phase(y)).mod1();
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("psi_E closed trace forms agree with Tr(x)+conj on ring codes") {
  for (int p : {3, 5}) {
    for (RingKind k : {RingKind::Unram, RingKind::Ram}) {
      const Ring& R = ring_make(p, k, 3);
      // additive in the code, for scaled elements w^{-k} c
      for (int kk = 1; kk <= 3; ++kk) {
        long long c1 = R.from_pair(2, 1), c2 = R.from_pair(p + 1, 2 * p + 2);
        Frac lhs = psiE_phase(R, kk, R.add(c1, c2));
        Frac rhs = (psiE_phase(R, kk, c1) + psiE_phase(R, kk, c2)).mod1();
        CHECK(lhs == rhs);
        // matches psi composed with the trace computed independently
        LocalElt tr = ext_trace_down(R, kk, c1, 3);
        if (!tr.is_zero()) {
          if (tr.v < 0) CHECK(psiE_phase(R, kk, c1) == psi_phase(tr));
          else CHECK(psiE_phase(R, kk, c1) == Frac(0));
        }
      }
    }
  }
}

TEST_CASE("psi_E level: trivial on w^{-d_E} O_E, not below") {
  for (int p : {3, 5}) {
    const Ring& R = ring_make(p, RingKind::Ram, 2);
    bool all_triv = true, next_triv = true;
    long long codes = R.pm * R.pm;
    for (long long c = 0; c < codes; ++c) {
      if (!psiE_phase(R, 1, c).is_zero_mod1()) all_triv = false;   // level d_E = 1
      if (!psiE_phase(R, 2, c).is_zero_mod1()) next_triv = false;
    }
    CHECK(all_triv);        // trivial on w^{-1} O
    CHECK(!next_triv);
  }
}

TEST_CASE("X_n sizes and orthogonality") {
  for (int p : {3, 5}) {
    CHECK(enumerate_X(p, 0).size() == 1);
    CHECK((long long)enumerate_X(p, 1).size() == p - 1);
    CHECK((long long)enumerate_X(p, 2).size() == p * (p - 1));
    // orthogonality: (1/|X_n|) sum_w w(u) = 1_{u = 1 mod p^n}
    int n = 2;
    auto X = enumerate_X(p, n);
    const Ring& R = ring_make(p, RingKind::Base, n);
    for (long long u : R.units) {
      cplx s = 0;
      for (const MulChar& w : X) s += w.unit_eval(u);
      s /= (double)X.size();
      double expect = (u == 1) ? 1.0 : 0.0;
      CHECK(std::abs(s - expect) < 1e-12);
    }
  }
}

TEST_CASE("conductor matches direct definition (exhaustive p=3, m=2)") {
  const Ring& R = ring_make(3, RingKind::Base, 2);
  for (const MulChar& c : chars_of_ring(R)) {
    int cc = c.conductor();
    // direct: smallest k with c trivial on 1 + p^k
    int direct = 0;
    for (int k = 0; k <= 2; ++k) {
      bool triv = true;
      for (long long u : R.units)
        if (R.val(R.sub(u, 1)) >= k && !c.unit_phase(u).is_zero_mod1()) triv = false;
      if (triv) { direct = k; break; }
      direct = k + 1;
    }
    CHECK(cc == direct);
  }
}

TEST_CASE("quad char of extension is quadratic and kills norms") {
  for (int p : {3, 5}) {
    for (RingKind k : {RingKind::Unram, RingKind::Ram}) {
      const Ring& E = ring_make(p, k, 2);
      MulChar eta = quad_char_of_ext(E, 2);
      // order 2 overall
      MulChar sq = mc_mul(eta, eta);
      CHECK(sq.conductor() == 0);
      CHECK(sq.wpi.is_zero_mod1());
      CHECK(!(eta.conductor() == 0 && eta.wpi.is_zero_mod1()));
      // trivial on unit norms
      for (long long x : E.units) {
        LocalElt nx = ext_norm_down(E, 0, x, 2);
        CHECK(eta.phase_at(nx).is_zero_mod1());
      }
      // trivial at Nm(w)
      if (k == RingKind::Ram) {
        LocalElt nw = ext_norm_down(E, -1, E.one(), 2);  // Nm(w) = -p
        CHECK(eta.phase_at(nw).is_zero_mod1());
      } else {
        LocalElt nw = LocalElt::from_int(p, p * p, 2);  // Nm(p) = p^2... prec
        CHECK(eta.phase_at(nw).is_zero_mod1());
      }
    }
  }
}

TEST_CASE("alpha oracle: defining identity and valuation") {
  for (int p : {3, 5}) {
    for (int n : {1, 2, 3}) {
      for (const MulChar& chi : enumerate_X(p, n)) {
        if (chi.conductor() != n) continue;
        AlphaF A = alpha_of(chi);
        CHECK(A.alpha.v == -n);
        CHECK(A.domain == (n + 1) / 2);
        // defining identity on the whole domain
        long long pd = ipow(p, A.domain);
        for (long long t = 0; t < ipow(p, n - A.domain + 1); ++t) {
          LocalElt one = LocalElt::from_int(p, 1 + pd * t, n + 1);
          LocalElt x = LocalElt::from_int(p, pd * t, n + 1);
          Frac lhs = chi.phase_at(one);
          Frac rhs = x.is_zero() ? Frac(0) : psi_phase(le_mul(A.alpha, x));
          if (t < ipow(p, n - A.domain))  // inside the guaranteed domain
            CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("alpha oracle over the extension: defining identity") {
  int p = 3;
  for (RingKind k : {RingKind::Unram, RingKind::Ram}) {
    const Ring& E = ring_make(p, k, k == RingKind::Unram ? 2 : 2);
    for (const MulChar& Xi : chars_of_ring(E)) {
      int n = Xi.conductor();
      if (n < 1 || n > (k == RingKind::Unram ? 2 : 3)) continue;
      AlphaE A = alpha_of_ext(Xi);
      CHECK(A.kneg == n + (E.e - 1));
      // re-verify on all domain points
      long long wd = E.pow(E.uniformizer(), A.domain);
      long long codes = E.pm * E.pm;
      std::set<long long> done;
      for (long long t = 0; t < codes; ++t) {
        long long u = E.add(E.one(), E.mul(wd, t));
        if (done.count(u)) continue;
        done.insert(u);
        Frac lhs = Xi.unit_phase(u);
        Frac rhs = psiE_phase(E, A.kneg - A.domain, E.mul(A.code, t));
        CHECK(lhs == rhs.mod1());
      }
    }
  }
}

TEST_CASE("alpha_pair valuations") {
  int p = 3;
  auto X2 = enumerate_X(p, 2);
  const MulChar* c2 = nullptr;
  for (const auto& c : X2)
    if (c.conductor() == 2) { c2 = &c; break; }
  REQUIRE(c2 != nullptr);
  AlphaF a = alpha_of(*c2);
  LocalElt ap = alpha_pair_ps(a, a);
  CHECK(ap.v == -4);
  // supercuspidal: norm valuation equals -f*(c + d_E)
  for (RingKind k : {RingKind::Unram, RingKind::Ram}) {
    const Ring& E = ring_make(p, k, 2);
    for (const MulChar& Xi : chars_of_ring(E)) {
      int n = Xi.conductor();
      if (n < 1) continue;
      AlphaE A = alpha_of_ext(Xi);
      LocalElt na = alpha_pair_sc(A);
      int dE = E.e - 1;
      int expect = (k == RingKind::Unram) ? 2 * n : n + dE;
      CHECK(na.v == -expect);
    }
  }
}
