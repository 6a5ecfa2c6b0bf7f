#pragma once
// Finitely supported Kirillov-model vectors and the actions of unipotent,
// diagonal, and Weyl elements.
//
// Two independent engines share this header:
//  - KirillovVec: values tabulated per (shell valuation n, unit class mod p^M)
//  - CharVec:     coefficients in the orthonormal basis [n, omega] where
//                 [n, omega](w^n u) = omega(u)
// The unit-space engine is the direct realization; the character-basis engine
// is the fast path.  Cross-agreement between them is a standing test.
//
// Inner product: <W1, W2> = sum_n  avg over unit classes of W1 conj(W2)
// (multiplicative measure with vol(O^x) = 1).

#include <map>
#include <optional>
#include <vector>

#include "relchar/factors.hpp"

namespace rc {

struct KirillovCtx {
  int p = 0, M = 0;
  const Ring* RM = nullptr;    // base residue ring at unit precision M
  long long nu = 0;            // number of unit classes
  std::vector<MulChar> chars;  // all characters of (O/p^M)^x, odometer order
  int nch = 0;
  std::vector<std::vector<cplx>> chval;  // [char][unit index]
  std::vector<int> chinv;                // index of the inverse character
  std::vector<int> chcond;               // conductors
  std::vector<long long> strides;        // exponent vector -> char index

  int chmul(int a, int b) const;               // index of product character
  int char_index(const MulChar& om) const;     // unit restriction of om
  // character indices with conductor <= r (the group X_r inside level M)
  std::vector<int> X_sub(int r) const;
};

const KirillovCtx& kirillov_ctx(int p, int M);

struct KirillovVec {
  const KirillovCtx* C = nullptr;
  std::map<int, std::vector<cplx>> sh;  // shell n -> values per unit index

  std::vector<cplx>& shell(int n);
  void prune(double tol = 1e-14);
};

struct CharVec {
  const KirillovCtx* C = nullptr;
  std::map<std::pair<int, int>, cplx> c;  // (shell, char index) -> coefficient

  void add(int n, int ch, cplx v) {
    auto [it, fresh] = c.insert({{n, ch}, v});
    if (!fresh) it->second += v;
  }
  void prune(double tol = 1e-14);
};

// conversions (exact: the char basis is a unitary change of basis per shell)
CharVec to_chars(const KirillovVec& W);
KirillovVec to_units(const CharVec& W);

// Representation context: memoizes the Weyl gamma monomials per character.
struct RepCtx {
  const KirillovCtx* C = nullptr;
  RepGL2 pi;
  mutable std::vector<std::optional<GammaMono>> gmemo;

  RepCtx(const KirillovCtx& ctx, RepGL2 rep) : C(&ctx), pi(std::move(rep)) {
    gmemo.resize(C->nch);
  }
  // gamma monomial of pi twisted by the inverse of basis character `ch`
  const GammaMono& gamma_for(int ch) const;
};

// ---- actions ----
// (pi(n(x)) W)(y) = psi(x y) W(y)
KirillovVec act_unipotent(const LocalElt& x, const KirillovVec& W);
// (pi(a(t)) W)(y) = W(t y)
KirillovVec act_diag(const LocalElt& t, const KirillovVec& W);
CharVec act_diag(const LocalElt& t, const CharVec& W);

// pi(w)[n, omega] = coef * [-n - shift, omega^{-1}]
struct WeylShell {
  cplx coef;
  int out_shell = 0;
  int out_char = 0;
};
WeylShell weyl_on_shell(const RepCtx& rep, int n, int ch);
// independent contour oracle: DFT coefficient extraction from gamma sampled
// on roots of unity through the Gauss-sum route (no GammaMono shortcut)
WeylShell weyl_on_shell_contour(const RepCtx& rep, int n, int ch);

KirillovVec weyl(const RepCtx& rep, const KirillovVec& W);
CharVec weyl(const RepCtx& rep, const CharVec& W);

// ---- functionals and model vectors ----
cplx inner(const KirillovVec& a, const KirillovVec& b);
cplx inner(const CharVec& a, const CharVec& b);

// v_chi^R: chi(y) restricted to |v(y)| <= R
KirillovVec v_chi_R(const KirillovCtx& C, const MulChar& chi, int R);
CharVec v_chi_R_chars(const KirillovCtx& C, const MulChar& chi, int R);

// ell_chi(W) = sum_n avg_u W(w^n u) conj(chi(w^n u))  (= <W, v_chi^R>, R big)
cplx ell_chi(const MulChar& chi, const KirillovVec& W);

// gamma(s) evaluated through the Gauss-sum route (used by the contour
// oracle; independent of GammaMono::at)
cplx gamma_gl2_at_s(const RepGL2& pi, const MulChar& nu, cplx s);

double max_diff(const KirillovVec& a, const KirillovVec& b);

}  // namespace rc
