#pragma once
// The relative character H(a) = <Op(a) v_chi^R, v_chi^R> for a wavepacket
// symbol a, computed two ways:
//   - relchar_bruteforce: literal operator composition in the Kirillov model
//     (either engine), with R-stabilization
//   - relchar_table: the predicted closed-form cell values
// plus enumeration of the representations and pairs used by the verifier.

#include "relchar/opcalc.hpp"

namespace rc {

// Principal-series pi = chi0 boxplus chi0^{-1} with 1 <= c(chi0) <= cmax,
// deduplicated under chi0 <-> chi0^{-1} (lex-least phase vector kept).
std::vector<RepGL2> enumerate_ps(int p, int cmax);

// Dihedral pi attached to the quadratic extension of the given kind: xi
// regular with xi|_F = eta_{E/F} (trivial central character on PGL2) and
// conductor at most cmax_w w-digits, deduplicated under xi <-> xi^sigma.
std::vector<RepGL2> enumerate_sc(int p, RingKind kind, int cmax_w);

struct PairData {
  RepGL2 pi;
  MulChar chi;
  int c_chi = 0;
  int c_pair = 0;        // conductor of the pair, = gamma shift of pi x chi^{-1}
  cplx gamma_half = 1.0; // gamma coefficient of pi twisted by chi^{-1}
  AlphaF alpha_chi;
  LocalElt alpha_pair;   // valuation -c_pair; PS: product of the two GL(1)
                         // alphas; dihedral: norm of the extension alpha
  int tau_bound = 0;     // largest r,s for which the closed forms apply:
                         // twists by X_t preserve the pair conductor and the
                         // alpha unit is resolved to depth t
  int f_flat = 0;        // PS: conductors of the two twisted constituents;
  int f_sharp = 0;       // SC: f_flat = w-digit conductor of the pair twist
};

// throws std::invalid_argument / LFactorPresent with a named hypothesis when
// chi is unramified or the pair is non-generic
PairData make_pair_data(const RepGL2& pi, const MulChar& chi);

enum class Engine { Chars, Units };

struct BruteResult {
  cplx H;       // at R = N + c_pair + 1
  cplx H_stab;  // at R + 2 (must agree exactly)
  int R = 0;
  int M = 0;    // unit precision used
};
// rep, if given, must be built on a context with unit precision M >= the
// point's requirement max(c(chi), r, s, 1) + 1; sharing it across a grid
// avoids recomputing the per-character Weyl gamma tables
BruteResult relchar_bruteforce(const PairData& pd, const Wavepacket& a,
                               Engine eng = Engine::Chars, RepCtx* rep = nullptr);

struct TableResult {
  Frac cell;           // printed closed-form cell value (nonnegative rational)
  bool window = false; // alpha_chi in B(T tau_x, T)
  int r = 0, s = 0;
  cplx value;          // cell * window
};
TableResult relchar_table(const PairData& pd, const Wavepacket& a);

}  // namespace rc
