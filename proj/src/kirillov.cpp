#include "relchar/kirillov.hpp"

#include <cassert>
#include <cmath>
#include <map>
#include <mutex>

namespace rc {

namespace {
constexpr double PRUNE = 1e-14;
}

int KirillovCtx::chmul(int a, int b) const {
  const MulChar& A = chars[a];
  const MulChar& B = chars[b];
  long long idx = 0;
  for (size_t i = 0; i < RM->gens.size(); ++i) {
    long long ord = RM->gen_order[i];
    long long ea = A.ph[i].num * (ord / A.ph[i].den);
    long long eb = B.ph[i].num * (ord / B.ph[i].den);
    idx += ((ea + eb) % ord) * strides[i];
  }
  return (int)idx;
}

int KirillovCtx::char_index(const MulChar& om) const {
  if (om.conductor() > RM->m) throw std::invalid_argument("char_index: conductor exceeds M");
  long long idx = 0;
  for (size_t i = 0; i < RM->gens.size(); ++i) {
    long long ord = RM->gen_order[i];
    long long g = RM->gens[i];
    // lift or reduce into om's defining ring (valid when c(om) <= M)
    Frac f = (om.R->m <= RM->m) ? om.unit_phase(om.R->reduce_from(*RM, g)).mod1()
                                : om.unit_phase(g).mod1();
    if (ord % f.den != 0) throw std::runtime_error("char_index: phase not representable at level M");
    idx += (f.num * (ord / f.den)) % ord * strides[i];
  }
  return (int)idx;
}

std::vector<int> KirillovCtx::X_sub(int r) const {
  std::vector<int> out;
  for (int i = 0; i < nch; ++i)
    if (chcond[i] <= r) out.push_back(i);
  return out;
}

const KirillovCtx& kirillov_ctx(int p, int M) {
  static std::map<std::pair<int, int>, KirillovCtx> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, M);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  KirillovCtx C;
  C.p = p;
  C.M = M;
  C.RM = &ring_make(p, RingKind::Base, M);
  C.nu = C.RM->nunits;
  C.chars = chars_of_ring(*C.RM);
  C.nch = (int)C.chars.size();
  size_t k = C.RM->gens.size();
  C.strides.assign(k, 1);
  for (size_t i = k; i-- > 1;) C.strides[i - 1] = C.strides[i] * C.RM->gen_order[i];
  C.chval.resize(C.nch);
  C.chinv.resize(C.nch);
  C.chcond.resize(C.nch);
  for (int c = 0; c < C.nch; ++c) {
    C.chval[c].resize(C.nu);
    for (long long j = 0; j < C.nu; ++j)
      C.chval[c][j] = C.chars[c].unit_eval(C.RM->units[j]);
    C.chcond[c] = C.chars[c].conductor();
    long long inv = 0;
    for (size_t i = 0; i < k; ++i) {
      long long ord = C.RM->gen_order[i];
      Frac f = C.chars[c].ph[i];
      long long e = f.num * (ord / f.den);
      inv += ((ord - e) % ord) * C.strides[i];
    }
    C.chinv[c] = (int)inv;
  }
  auto [pos, fresh] = cache.emplace(key, std::move(C));
  (void)fresh;
  return pos->second;
}

std::vector<cplx>& KirillovVec::shell(int n) {
  auto it = sh.find(n);
  if (it == sh.end()) it = sh.insert({n, std::vector<cplx>(C->nu, 0.0)}).first;
  return it->second;
}

void KirillovVec::prune(double tol) {
  for (auto it = sh.begin(); it != sh.end();) {
    double m = 0;
    for (cplx v : it->second) m = std::max(m, std::abs(v));
    it = (m < tol) ? sh.erase(it) : std::next(it);
  }
}

void CharVec::prune(double tol) {
  for (auto it = c.begin(); it != c.end();)
    it = (std::abs(it->second) < tol) ? c.erase(it) : std::next(it);
}

CharVec to_chars(const KirillovVec& W) {
  CharVec out;
  out.C = W.C;
  const KirillovCtx& C = *W.C;
  for (const auto& [n, f] : W.sh) {
    for (int ch = 0; ch < C.nch; ++ch) {
      cplx s = 0;
      for (long long j = 0; j < C.nu; ++j) s += f[j] * std::conj(C.chval[ch][j]);
      s /= (double)C.nu;
      if (std::abs(s) > PRUNE) out.add(n, ch, s);
    }
  }
  return out;
}

KirillovVec to_units(const CharVec& W) {
  KirillovVec out;
  out.C = W.C;
  const KirillovCtx& C = *W.C;
  for (const auto& [key, coef] : W.c) {
    auto& f = out.shell(key.first);
    const auto& cv = C.chval[key.second];
    for (long long j = 0; j < C.nu; ++j) f[j] += coef * cv[j];
  }
  return out;
}

const GammaMono& RepCtx::gamma_for(int ch) const {
  if (!gmemo[ch]) gmemo[ch] = gamma_gl2(pi, mc_inv(C->chars[ch]));
  return *gmemo[ch];
}

KirillovVec act_unipotent(const LocalElt& x, const KirillovVec& W) {
  KirillovVec out;
  out.C = W.C;
  const KirillovCtx& C = *W.C;
  if (x.is_zero()) { out.sh = W.sh; return out; }
  for (const auto& [n, f] : W.sh) {
    auto& g = out.shell(n);
    if (x.v + n >= 0) {
      g = f;  // psi trivial on O
      continue;
    }
    for (long long j = 0; j < C.nu; ++j) {
      if (f[j] == 0.0) continue;
      LocalElt y = LocalElt::make(C.p, n, C.RM->units[j], C.M);
      g[j] = f[j] * psi_eval(le_mul(x, y));
    }
  }
  return out;
}

KirillovVec act_diag(const LocalElt& t, const KirillovVec& W) {
  if (t.is_zero()) throw std::domain_error("act_diag: t = 0");
  KirillovVec out;
  out.C = W.C;
  const KirillovCtx& C = *W.C;
  long long tu = t.u % C.RM->pm;
  for (const auto& [n, f] : W.sh) {
    auto& g = out.shell(n - t.v);
    for (long long j = 0; j < C.nu; ++j) {
      long long src = C.RM->mul(tu, C.RM->units[j]);  // value index: W(t y)
      g[j] = f[C.RM->unit_index.at(src)];
    }
  }
  return out;
}

CharVec act_diag(const LocalElt& t, const CharVec& W) {
  if (t.is_zero()) throw std::domain_error("act_diag: t = 0");
  CharVec out;
  out.C = W.C;
  const KirillovCtx& C = *W.C;
  long long tu = t.u % C.RM->pm;
  long long ti = C.RM->unit_index.at(tu);
  for (const auto& [key, coef] : W.c)
    out.add(key.first - t.v, key.second, coef * C.chval[key.second][ti]);
  return out;
}

WeylShell weyl_on_shell(const RepCtx& rep, int n, int ch) {
  const GammaMono& g = rep.gamma_for(ch);
  return WeylShell{g.coef, -n - g.shift, rep.C->chinv[ch]};
}

cplx gamma_gl2_at_s(const RepGL2& pi, const MulChar& nu, cplx s) {
  int p = nu.R->p;
  if (pi.kind == RepGL2::PS) {
    const Ring& fine = (pi.chi0.R->m >= nu.R->m) ? *pi.chi0.R : *nu.R;
    cplx out = 1.0;
    for (int which = 0; which < 2; ++which) {
      MulChar base = mc_lift(pi.chi0, fine);
      if (which == 1) base = mc_inv(base);
      MulChar a = mc_mul(base, mc_lift(nu, fine));
      int c = a.conductor();
      if (c == 0) throw LFactorPresent("gamma_gl2_at_s: unramified constituent");
      // Tate's lemma route: q^{c(1-s)} a(w^c) g(a^{-1}, psi_{w^{-c}})
      LocalElt t = LocalElt::make(p, -c, 1, c + 1);
      cplx eps = std::pow(cplx(p), (1.0 - s) * (double)c) *
                 unit_from_phase((a.wpi * c).mod1()) * gauss_sum(mc_inv(a), t);
      out *= eps;
    }
    return out;
  }
  const Ring& E = (pi.E->m >= nu.R->m) ? *pi.E : ring_make(pi.E->p, pi.E->kind, nu.R->m);
  MulChar Xi = mc_mul(mc_lift(pi.xi, E), nm_compose(nu, E));
  int c = Xi.conductor();
  if (c == 0) throw LFactorPresent("gamma_gl2_at_s: unramified dihedral twist");
  int dE = E.e - 1;
  int L = c + dE;
  const Ring* RE = Xi.R;
  MulChar X = Xi;
  if (RE->wdigits() < L) {
    const Ring& fine = ring_make(E.p, E.kind, (L + E.e - 1) / E.e);
    X = mc_lift(Xi, fine);
    RE = &fine;
  }
  // direct unit-class sum at general s (additive measure vol(O_E)=q_E^{-dE/2})
  std::map<long long, bool> seen;
  cplx sum = 0;
  for (long long u : RE->units) {
    // reduce mod w^L by zeroing deep digits through a fresh ring reduction
    auto [a, b] = RE->to_pair(u);
    long long key;
    if (RE->kind == RingKind::Unram) {
      long long pk = 1;
      for (int i = 0; i < std::min(L, RE->m); ++i) pk *= RE->p;
      key = RE->from_pair(a % pk, b % pk);
    } else {
      long long pa = 1, pb = 1;
      for (int i = 0; i < std::min((L + 1) / 2, RE->m); ++i) pa *= RE->p;
      for (int i = 0; i < std::min(L / 2, RE->m); ++i) pb *= RE->p;
      key = RE->from_pair(a % pa, b % pb);
    }
    if (seen.count(key)) continue;
    seen[key] = true;
    sum += unit_from_phase(((Frac(0) - X.unit_phase(key)) + psiE_phase(*RE, L, key)).mod1());
  }
  double qE = (double)RE->q;
  cplx eps = std::pow(cplx(qE), (1.0 - s) * (double)L) *
             unit_from_phase((X.wpi * L).mod1()) * std::pow(qE, -0.5 * dE) *
             std::pow(qE, -(double)L) * sum;
  return lambda_EF(E) * eps;
}

WeylShell weyl_on_shell_contour(const RepCtx& rep, int n, int ch) {
  // pi(w)[n, omega] has a single z-monomial C z^K with z = q^{1/2 - s};
  // sample gamma on |z| = 1 through the Gauss-sum route and DFT-extract.
  const KirillovCtx& C = *rep.C;
  MulChar nu = mc_inv(C.chars[ch]);
  const int J = 64;
  double lnq = std::log((double)C.p);
  std::vector<cplx> g(J);
  for (int j = 0; j < J; ++j) {
    double th = 2.0 * M_PI * j / J;
    cplx s = cplx(0.5, -th / lnq);  // z = q^{1/2-s} = e^{i th}
    g[j] = gamma_gl2_at_s(rep.pi, nu, s);
  }
  int bestK = 0;
  cplx bestC = 0;
  for (int K = 0; K < J; ++K) {
    cplx c = 0;
    for (int j = 0; j < J; ++j) {
      double th = 2.0 * M_PI * j * K / J;
      c += g[j] * std::polar(1.0, -th);
    }
    c /= (double)J;
    if (std::abs(c) > std::abs(bestC)) { bestC = c; bestK = K; }
  }
  return WeylShell{bestC, -n - bestK, rep.C->chinv[ch]};
}

KirillovVec weyl(const RepCtx& rep, const KirillovVec& W) {
  const KirillovCtx& C = *rep.C;
  KirillovVec out;
  out.C = W.C;
  for (const auto& [n, f] : W.sh) {
    for (int ch = 0; ch < C.nch; ++ch) {
      cplx coef = 0;
      for (long long j = 0; j < C.nu; ++j) coef += f[j] * std::conj(C.chval[ch][j]);
      coef /= (double)C.nu;
      if (std::abs(coef) < PRUNE) continue;
      WeylShell ws = weyl_on_shell(rep, n, ch);
      auto& g = out.shell(ws.out_shell);
      const auto& cv = C.chval[ws.out_char];
      for (long long j = 0; j < C.nu; ++j) g[j] += coef * ws.coef * cv[j];
    }
  }
  out.prune();
  return out;
}

CharVec weyl(const RepCtx& rep, const CharVec& W) {
  CharVec out;
  out.C = W.C;
  for (const auto& [key, coef] : W.c) {
    if (std::abs(coef) < PRUNE) continue;
    WeylShell ws = weyl_on_shell(rep, key.first, key.second);
    out.add(ws.out_shell, ws.out_char, coef * ws.coef);
  }
  return out;
}

cplx inner(const KirillovVec& a, const KirillovVec& b) {
  const KirillovCtx& C = *a.C;
  cplx s = 0;
  for (const auto& [n, f] : a.sh) {
    auto it = b.sh.find(n);
    if (it == b.sh.end()) continue;
    cplx t = 0;
    for (long long j = 0; j < C.nu; ++j) t += f[j] * std::conj(it->second[j]);
    s += t / (double)C.nu;
  }
  return s;
}

cplx inner(const CharVec& a, const CharVec& b) {
  cplx s = 0;
  for (const auto& [key, v] : a.c) {
    auto it = b.c.find(key);
    if (it != b.c.end()) s += v * std::conj(it->second);
  }
  return s;
}

KirillovVec v_chi_R(const KirillovCtx& C, const MulChar& chi, int R) {
  KirillovVec out;
  out.C = &C;
  int ci = C.char_index(chi);
  for (int n = -R; n <= R; ++n) {
    cplx ph = unit_from_phase((chi.wpi * n).mod1());
    auto& f = out.shell(n);
    for (long long j = 0; j < C.nu; ++j) f[j] = ph * C.chval[ci][j];
  }
  return out;
}

CharVec v_chi_R_chars(const KirillovCtx& C, const MulChar& chi, int R) {
  CharVec out;
  out.C = &C;
  int ci = C.char_index(chi);
  for (int n = -R; n <= R; ++n) out.add(n, ci, unit_from_phase((chi.wpi * n).mod1()));
  return out;
}

cplx ell_chi(const MulChar& chi, const KirillovVec& W) {
  const KirillovCtx& C = *W.C;
  int ci = C.char_index(chi);
  cplx s = 0;
  for (const auto& [n, f] : W.sh) {
    cplx t = 0;
    for (long long j = 0; j < C.nu; ++j) t += f[j] * std::conj(C.chval[ci][j]);
    s += t / (double)C.nu * std::conj(unit_from_phase((chi.wpi * n).mod1()));
  }
  return s;
}

double max_diff(const KirillovVec& a, const KirillovVec& b) {
  double m = 0;
  const KirillovCtx& C = *a.C;
  auto scan = [&](const KirillovVec& x, const KirillovVec& y) {
    for (const auto& [n, f] : x.sh) {
      auto it = y.sh.find(n);
      for (long long j = 0; j < C.nu; ++j) {
        cplx other = (it == y.sh.end()) ? 0.0 : it->second[j];
        m = std::max(m, std::abs(f[j] - other));
      }
    }
  };
  scan(a, b);
  scan(b, a);
  return m;
}

}  // namespace rc
