#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relchar/relchar.hpp"

using namespace rc;

namespace {

long long ipow(long long b, int e) { long long r = 1; while (e--) r *= b; return r; }

MulChar chi_of_cond(int p, int c) {
  for (const MulChar& x : enumerate_X(p, c))
    if (x.conductor() == c) return x;
  REQUIRE(false);
  return MulChar{};
}

// PS pair at p = 3: chi0 quadratic, chi of conductor 2 (c_pair = 4)
PairData ps_pair() {
  static PairData pd = make_pair_data(enumerate_ps(3, 1)[0], chi_of_cond(3, 2));
  return pd;
}

// SC pair at p = 3: unramified E, chi quadratic (c_pair = 2)
PairData sc_pair() {
  static PairData pd =
      make_pair_data(enumerate_sc(3, RingKind::Unram, 1)[0], chi_of_cond(3, 1));
  return pd;
}

Wavepacket packet(const PairData& pd, int N, const LocalElt& ty, const LocalElt& tz) {
  Wavepacket a;
  a.N = N;
  a.tau_x = le_shift(pd.alpha_chi.alpha, N);
  a.tau_y = ty;
  a.tau_z = tz;
  return a;
}

}  // namespace

TEST_CASE("op_plus dichotomy: support restriction and unit-coset filter") {
  const KirillovCtx& C = kirillov_ctx(3, 3);
  MulChar chi = chi_of_cond(3, 2);
  KirillovVec W = v_chi_R(C, chi, 5);
  int N = 2;
  // tau_y integral: keep shells n >= -N, idempotent
  KirillovVec A = op_plus(LocalElt::zero_elt(3), N, W);
  for (const auto& [n, f] : A.sh) CHECK(n >= -N);
  CHECK(A.sh.size() == 8);  // n in [-2, 5]
  CHECK(max_diff(op_plus(LocalElt::zero_elt(3), N, A), A) < 1e-14);
  CHECK(max_diff(op_plus(LocalElt::from_int(3, 5, 3), N, W), A) < 1e-14);
  // tau_y = w^{-1} u0: exactly the shell -N-1, units congruent to u0 mod 3
  for (long long u0 : {1LL, 2LL}) {
    KirillovVec B = op_plus(LocalElt::make(3, -1, u0, 3), N, W);
    CHECK(B.sh.size() == 1);
    const auto& f = B.sh.at(-N - 1);
    for (long long j = 0; j < C.nu; ++j) {
      bool match = C.RM->units[j] % 3 == u0 % 3;
      cplx expect = match ? W.sh.at(-N - 1)[j] : cplx(0);
      CHECK(std::abs(f[j] - expect) < 1e-12);
    }
    // char engine agrees
    CharVec Bc = op_plus(LocalElt::make(3, -1, u0, 3), N, to_chars(W));
    CHECK(max_diff(to_units(Bc), B) < 1e-10);
  }
}

TEST_CASE("op_zero is the alpha_chi window on chi-isotypic vectors") {
  PairData pd = ps_pair();
  const KirillovCtx& C = kirillov_ctx(3, 3);
  int N = 2;
  KirillovVec W = v_chi_R(C, pd.chi, 4);
  LocalElt in = le_shift(pd.alpha_chi.alpha, N);               // T tau_x = alpha
  LocalElt edge = le_add(in, LocalElt::from_int(3, 1, 3));     // alpha + w^{-N}
  LocalElt out = le_add(in, LocalElt::make(3, -1, 1, 3));      // alpha + w^{-N-1}
  CHECK(max_diff(op_zero(in, N, W), W) < 1e-9);
  CHECK(max_diff(op_zero(edge, N, W), W) < 1e-9);
  KirillovVec Z = op_zero(out, N, W);
  Z.prune(1e-9);
  CHECK(Z.sh.empty());
  // char engine agreement on all three
  for (const LocalElt& tx : {in, edge, out})
    CHECK(max_diff(to_units(op_zero(tx, N, to_chars(W))), op_zero(tx, N, W)) < 1e-9);
}

TEST_CASE("op_minus restricts the Weyl-side support") {
  PairData pd = ps_pair();
  const KirillovCtx& C = kirillov_ctx(3, 3);
  RepCtx rep(C, pd.pi);
  int N = 2;
  KirillovVec W = v_chi_R(C, pd.chi, 7);
  KirillovVec A = op_minus(LocalElt::zero_elt(3), N, rep, W);
  // surviving shells: n <= N - c_pair on the original side
  for (const auto& [n, f] : A.sh) CHECK(n <= N - pd.c_pair);
  CHECK((int)A.sh.size() == (N - pd.c_pair) + 7 + 1);
  CHECK(max_diff(to_units(op_minus(LocalElt::zero_elt(3), N, rep, to_chars(W))), A) < 1e-9);
}

TEST_CASE("all 6 operator orderings agree") {
  for (PairData pd : {ps_pair(), sc_pair()}) {
    const KirillovCtx& C = kirillov_ctx(3, 3);
    RepCtx rep(C, pd.pi);
    int N = 2;
    LocalElt u1 = LocalElt::make(3, -1, 1, 3);
    Wavepacket a = packet(pd, N, u1, u1);
    CharVec W = v_chi_R_chars(C, pd.chi, N + pd.c_pair + 1);
    auto P = [&](const CharVec& v) { return op_plus(a.tau_y, N, v); };
    auto Z = [&](const CharVec& v) { return op_zero(a.tau_x, N, v); };
    auto M = [&](const CharVec& v) { return op_minus(a.tau_z, N, rep, v); };
    using F = std::function<CharVec(const CharVec&)>;
    std::vector<std::array<F, 3>> orders = {{P, Z, M}, {P, M, Z}, {Z, P, M},
                                            {Z, M, P}, {M, P, Z}, {M, Z, P}};
    KirillovVec ref;
    bool first = true;
    for (auto& [f, g, h] : orders) {
      KirillovVec v = to_units(h(g(f(W))));
      if (first) { ref = v; first = false; continue; }
      CHECK(max_diff(v, ref) < 1e-9);
    }
  }
}

TEST_CASE("star product: exact character pairing and group law") {
  int p = 3, mm = 4;
  long long pmm = ipow(p, mm);
  auto mats = [&](int N) {
    std::vector<Mat2> v;
    long long pN = ipow(p, N);
    for (long long h : {0LL, 1LL, 2LL})
      for (long long b : {0LL, 2LL})
        for (long long c : {0LL, 1LL})
          v.push_back(Mat2{pN * h % pmm, pN * b % pmm, pN * c % pmm,
                           (pmm - pN * h % pmm) % pmm});
    return v;
  };
  for (const Mat2& x : mats(1)) {
    for (const Mat2& y : mats(1)) {
      Mat2 s = star(p, mm, x, y);
      // group law holds exactly
      Mat2 lhs = mat_mul(p, mm, mat_exp_padic(p, mm, x), mat_exp_padic(p, mm, y));
      Mat2 rhs = mat_exp_padic(p, mm, s);
      CHECK(lhs.a == rhs.a);
      CHECK(lhs.b == rhs.b);
      CHECK(lhs.c == rhs.c);
      CHECK(lhs.d == rhs.d);
      // trace stays zero
      CHECK((s.a + s.d) % pmm == 0);
      // character property: <x,xi> + <y,xi> = <x*y,xi> (mod 1) for xi at
      // depth m with 2N >= m (the correction pairs trivially)
      for (int m : {1, 2}) {
        for (const Mat2& xi : {Mat2{1, 0, 0, 2}, Mat2{0, 1, 2, 0}, Mat2{2, 1, 1, 1}}) {
          Frac lp = (pair_phase(p, x, xi, m) + pair_phase(p, y, xi, m)).mod1();
          Frac rp = pair_phase(p, s, xi, m).mod1();
          CHECK(lp == rp);
        }
      }
    }
  }
  // log inverts exp exactly
  for (const Mat2& x : mats(1)) {
    Mat2 back = mat_log_padic(p, mm, mat_exp_padic(p, mm, x));
    CHECK(back.a == x.a);
    CHECK(back.b == x.b);
    CHECK(back.c == x.c);
    CHECK(back.d == x.d);
  }
}

TEST_CASE("wavepacket decomposition reconstructs samples exactly") {
  int p = 3, N = 1;
  std::vector<std::tuple<LocalElt, LocalElt, LocalElt, cplx>> samples;
  std::vector<LocalElt> reps = {LocalElt::zero_elt(p), LocalElt::make(p, -1, 1, 2),
                                LocalElt::make(p, -1, 2, 2)};
  int k = 0;
  for (const LocalElt& x : reps)
    for (const LocalElt& y : reps)
      samples.push_back({x, y, reps[k++ % 3], cplx(k, -k / 2.0)});
  WavepacketSum a = wavepacket_decompose(samples, N);
  CHECK(a.terms.size() == samples.size());
  for (const auto& [tx, ty, tz, val] : samples) {
    cplx got = wavepacket_eval(a, le_shift(tx, -N), le_shift(ty, -N), le_shift(tz, -N));
    CHECK(std::abs(got - val) == 0.0);  // exact reconstruction
  }
}

TEST_CASE("op_full output is microlocalized: unipotent acts by psi(x T tau_y)") {
  PairData pd = ps_pair();
  const KirillovCtx& C = kirillov_ctx(3, 3);
  RepCtx rep(C, pd.pi);
  int N = 2;
  LocalElt ty = LocalElt::make(3, -1, 2, 3);
  Wavepacket a = packet(pd, N, ty, LocalElt::zero_elt(3));
  KirillovVec W = op_full(a, rep, v_chi_R(C, pd.chi, N + pd.c_pair + 1));
  REQUIRE(!W.sh.empty());
  LocalElt Tty = le_shift(ty, -N);
  for (long long xu : {1LL, 2LL}) {
    LocalElt x = LocalElt::make(3, N, xu, 3);  // x in p^N
    cplx ph = psi_eval(le_mul(x, Tty));        // +1 sign convention
    KirillovVec A = act_unipotent(x, W);
    KirillovVec B = W;
    for (auto& [n, f] : B.sh)
      for (auto& v : f) v *= ph;
    CHECK(max_diff(A, B) < 1e-9);
  }
}

TEST_CASE("op_full equals the direct group-integral oracle (slow)") {
  // K(mw)-invariant input: single-shell v_chi^0, so the Riemann sum over
  // k(N)/k(mw) is exact.  Dihedral reps only: the oracle's w-conjugation
  // spreads mass onto every twist line, and for an induced-from-Borel rep
  // the lines carrying an L-factor have no single-shift Weyl action.  With
  // an unramified quadratic extension those lines cannot occur (they would
  // force a sigma-fixed, hence non-regular, inducing character).
  PairData pd = sc_pair();  // c_pair = 2
  const KirillovCtx& C = kirillov_ctx(3, 2);
  RepCtx rep(C, pd.pi);
  int N = 1, mw = 3;  // mw >= R0 + c_pair and >= M
  KirillovVec W = v_chi_R(C, pd.chi, 0);
  std::vector<std::pair<LocalElt, LocalElt>> tt = {
      {LocalElt::zero_elt(3), LocalElt::zero_elt(3)},
      {LocalElt::make(3, -1, 1, 3), LocalElt::zero_elt(3)},
      {LocalElt::make(3, -1, 2, 3), LocalElt::make(3, -1, 1, 3)}};
  for (const auto& [ty, tz] : tt) {
    Wavepacket a = packet(pd, N, ty, tz);
    KirillovVec lhs = op_full(a, rep, W);
    KirillovVec rhs = op_direct_oracle(a, rep, W, mw);
    CHECK(max_diff(lhs, rhs) < 1e-9);
  }
}
