#include "relchar/characters.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace rc {

namespace {
long long ipow(long long b, int e) { long long r = 1; while (e-- > 0) r *= b; return r; }

// reduce a ring code modulo w^L (canonical residue code)
long long red_w(const Ring& R, long long code, int L) {
  auto [a, b] = R.to_pair(code);
  switch (R.kind) {
    case RingKind::Base: {
      long long pk = ipow(R.p, std::min(L, R.m));
      return R.from_pair(a % pk, 0);
    }
    case RingKind::Unram: {
      long long pk = ipow(R.p, std::min(L, R.m));
      return R.from_pair(a % pk, b % pk);
    }
    case RingKind::Ram: {
      int ja = std::min((L + 1) / 2, R.m);  // a known mod p^ceil(L/2)
      int jb = std::min(L / 2, R.m);        // b known mod p^floor(L/2)
      return R.from_pair(a % ipow(R.p, ja), b % ipow(R.p, jb));
    }
  }
  throw std::logic_error("unreachable");
}
}  // namespace

Frac MulChar::unit_phase(long long code) const {
  // reduce an arbitrary lift into the defining ring
  auto [a, b] = (R->kind == RingKind::Base)
                    ? std::pair<long long, long long>{code, 0}
                    : R->to_pair(code);
  long long c = R->from_pair(a, b);
  const auto& ex = R->dlog_of(c);
  Frac s(0);
  for (size_t i = 0; i < ph.size(); ++i)
    if (ex[i] != 0) s = s + ph[i] * ex[i];
  return s.mod1();
}

int MulChar::conductor() const {
  if (cond_cache >= 0) return cond_cache;
  bool triv = true;
  for (const Frac& f : ph)
    if (!f.is_zero_mod1()) { triv = false; break; }
  int c = 0;
  if (!triv) {
    for (long long u : R->units) {
      if (unit_phase(u).is_zero_mod1()) continue;
      int lev = R->val(R->sub(u, R->one()));  // u is in 1 + w^lev, not deeper
      c = std::max(c, lev + 1);
    }
  }
  cond_cache = c;
  return c;
}

Frac MulChar::phase_at(const LocalElt& x) const {
  if (R->kind != RingKind::Base) throw std::domain_error("phase_at: base-kind only");
  if (x.is_zero()) throw std::domain_error("phase_at: zero");
  if (x.prec < conductor()) throw std::runtime_error("phase_at: precision below conductor");
  Frac s = wpi * x.v + unit_phase(x.u % R->pm);
  return s.mod1();
}

MulChar mc_mul(const MulChar& a, const MulChar& b) {
  if (a.R != b.R) throw std::invalid_argument("mc_mul: lift to a common ring first");
  MulChar r;
  r.R = a.R;
  r.wpi = (a.wpi + b.wpi).mod1();
  for (size_t i = 0; i < a.ph.size(); ++i) r.ph.push_back((a.ph[i] + b.ph[i]).mod1());
  return r;
}

MulChar mc_inv(const MulChar& a) {
  MulChar r;
  r.R = a.R;
  r.wpi = (-a.wpi).mod1();
  for (const Frac& f : a.ph) r.ph.push_back((-f).mod1());
  return r;
}

MulChar mc_lift(const MulChar& a, const Ring& fine) {
  if (&fine == a.R) return a;
  MulChar r;
  r.R = &fine;
  r.wpi = a.wpi;
  for (long long g : fine.gens) r.ph.push_back(a.unit_phase(a.R->reduce_from(fine, g)));
  return r;
}

MulChar mc_sigma(const MulChar& a) {
  MulChar r;
  r.R = a.R;
  for (long long g : a.R->gens) r.ph.push_back(a.unit_phase(a.R->conj(g)));
  if (a.R->kind == RingKind::Ram) {
    // sigma(w) = -w :  chi^sigma(w) = chi(-1) chi(w)
    r.wpi = (a.wpi + a.unit_phase(a.R->from_pair(-1, 0))).mod1();
  } else {
    r.wpi = a.wpi;  // uniformizer p is fixed by sigma
  }
  return r;
}

std::vector<MulChar> chars_of_ring(const Ring& R) {
  std::vector<MulChar> out;
  size_t k = R.gens.size();
  std::vector<long long> ex(k, 0);
  while (true) {
    MulChar c;
    c.R = &R;
    for (size_t i = 0; i < k; ++i) c.ph.push_back(Frac(ex[i], R.gen_order[i]));
    out.push_back(std::move(c));
    size_t i = k;
    while (i > 0) {
      --i;
      if (++ex[i] < R.gen_order[i]) break;
      ex[i] = 0;
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

std::vector<MulChar> enumerate_X(int p, int n) {
  const Ring& R = ring_make(p, RingKind::Base, std::max(n, 1));
  if (n == 0) {
    MulChar triv;
    triv.R = &R;
    triv.ph.assign(R.gens.size(), Frac(0));
    return {triv};
  }
  return chars_of_ring(R);
}

MulChar nm_compose(const MulChar& chi, const Ring& E) {
  if (chi.R->kind != RingKind::Base) throw std::invalid_argument("nm_compose: chi must be base-kind");
  if (E.m < chi.conductor()) throw std::invalid_argument("nm_compose: extension ring too coarse");
  MulChar r;
  r.R = &E;
  for (long long g : E.gens) r.ph.push_back(chi.unit_phase(E.norm(g)));
  if (E.kind == RingKind::Unram) {
    // Nm(w) = Nm(p) = p^2
    r.wpi = (chi.wpi * 2).mod1();
  } else {
    // Nm(w) = -p
    LocalElt m1 = LocalElt::make(E.p, 0, ipow(E.p, chi.R->m) - 1, chi.R->m);
    r.wpi = (chi.wpi + chi.phase_at(m1)).mod1();
  }
  return r;
}

MulChar quad_char_of_ext(const Ring& E, int base_m) {
  const Ring& B = ring_make(E.p, RingKind::Base, base_m);
  MulChar eta;
  eta.R = &B;
  if (E.kind == RingKind::Unram) {
    eta.ph.assign(B.gens.size(), Frac(0));
    eta.wpi = Frac(1, 2);
    return eta;
  }
  // ramified: the quadratic character of the units (Legendre symbol lifted):
  // phase 1/2 on the unique even-order basis generator, pinned at the
  // uniformizer by eta(-p) = eta(Nm w) = 1.
  for (size_t i = 0; i < B.gens.size(); ++i)
    eta.ph.push_back(B.gen_order[i] % 2 == 0 ? Frac(1, 2) : Frac(0));
  eta.wpi = eta.unit_phase(B.from_pair(-1, 0));  // eta(p) = eta(-1)
  return eta;
}

AlphaF alpha_of(const MulChar& chi) {
  if (chi.R->kind != RingKind::Base) throw std::invalid_argument("alpha_of: base-kind only");
  int n = chi.conductor();
  if (n < 1) throw std::domain_error("alpha_of: unramified character");
  int p = chi.R->p;
  int d = (n + 1) / 2;
  int L = n - d;
  long long pL = ipow(p, L);
  long long pnd = ipow(p, n - d);  // = pL
  // candidate unit parts mod p^L
  std::vector<long long> cand;
  if (L == 0) {
    cand.push_back(1);
  } else {
    const Ring& RL = ring_make(p, RingKind::Base, L);
    cand = RL.units;
  }
  long long pd = ipow(p, d);
  std::vector<long long> valid;
  for (long long a : cand) {
    bool ok = true;
    for (long long t = 0; t < pnd && ok; ++t) {
      long long lift = 1 + pd * t;  // valid lift of 1 + p^d t
      Frac lhs = chi.unit_phase(lift % chi.R->pm);
      Frac rhs = Frac((a * t) % pnd, pnd);
      if (lhs.mod1() != rhs.mod1()) ok = false;
    }
    if (ok) valid.push_back(a);
  }
  if (valid.empty()) throw std::runtime_error("alpha_of: no solution (NoSolution)");
  // canonical: least dlog exponent vector in the level-L ring
  long long best = valid[0];
  if (L >= 1 && valid.size() > 1) {
    const Ring& RL = ring_make(p, RingKind::Base, L);
    best = *std::min_element(valid.begin(), valid.end(), [&](long long x, long long y) {
      return RL.dlog_of(x) < RL.dlog_of(y);
    });
  }
  AlphaF out;
  out.alpha = LocalElt::make(p, -n, best, std::max(L, 1));
  out.domain = d;
  out.unit_prec = L;
  (void)pL;
  return out;
}

AlphaE alpha_of_ext(const MulChar& Xi) {
  const Ring& R = *Xi.R;
  if (R.kind == RingKind::Base) throw std::invalid_argument("alpha_of_ext: extension-kind only");
  int n = Xi.conductor();
  if (n < 1) throw std::domain_error("alpha_of_ext: unramified character");
  int dE = R.e - 1;
  int d = (n + 1) / 2;
  int L = n - d;
  int kneg = n + dE;
  // candidate unit parts: dlog-least unit rep in each class mod w^L
  std::map<long long, long long> classes;  // reduced key -> chosen rep
  for (long long u : R.units) {
    long long key = red_w(R, u, L);
    auto it = classes.find(key);
    if (it == classes.end() || R.dlog_of(u) < R.dlog_of(it->second)) classes[key] = u;
  }
  // domain multipliers: all residues mod w^{n-d} = w^L
  std::map<long long, long long> ts;
  long long codes = (R.kind == RingKind::Base) ? R.pm : R.pm * R.pm;
  for (long long c = 0; c < codes; ++c) {
    long long key = red_w(R, c, L);
    if (!ts.count(key)) ts[key] = key;
  }
  long long wd = R.pow(R.uniformizer(), d);
  std::vector<long long> valid;
  for (auto& [key, a] : classes) {
    bool ok = true;
    for (auto& [tk, t] : ts) {
      long long u = R.add(R.one(), R.mul(wd, t));
      Frac lhs = Xi.unit_phase(u);
      Frac rhs = psiE_phase(R, kneg - d, R.mul(a, t));
      if (lhs.mod1() != rhs.mod1()) { ok = false; break; }
    }
    if (ok) valid.push_back(a);
  }
  if (valid.empty()) throw std::runtime_error("alpha_of_ext: no solution (NoSolution)");
  long long best = *std::min_element(valid.begin(), valid.end(), [&](long long x, long long y) {
    return R.dlog_of(x) < R.dlog_of(y);
  });
  AlphaE out;
  out.R = &R;
  out.kneg = kneg;
  out.code = best;
  out.domain = d;
  out.unit_prec_w = L;
  return out;
}

LocalElt alpha_pair_ps(const AlphaF& a, const AlphaF& b) { return le_mul(a.alpha, b.alpha); }

LocalElt alpha_pair_sc(const AlphaE& a) {
  const Ring& R = *a.R;
  int prec = std::max(1, a.unit_prec_w / R.e);
  return ext_norm_down(R, a.kneg, a.code, prec);
}

}  // namespace rc
