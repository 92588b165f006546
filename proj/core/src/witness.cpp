#include "grrlab/witness.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace grr {

QuadMat qmat_mul(const QuadExtCtx& E, const QuadMat& x, const QuadMat& y) {
  return {E.add(E.mul(x.a, y.a), E.mul(x.b, y.c)),
          E.add(E.mul(x.a, y.b), E.mul(x.b, y.d)),
          E.add(E.mul(x.c, y.a), E.mul(x.d, y.c)),
          E.add(E.mul(x.c, y.b), E.mul(x.d, y.d))};
}

bool qmat_is_scalar(const QuadExtCtx& E, const QuadMat& m) {
  return m.b == E.zero() && m.c == E.zero() && m.a == m.d && m.a != E.zero();
}

SUElem su_identity(const QuadExtCtx& E) { return {E.one(), E.zero()}; }

bool su_norm_ok(const QuadExtCtx& E, const SUElem& g) {
  const FieldCtx& F = E.base();
  return F.add(E.norm(g.a), E.norm(g.b)) == F.one();
}

SUElem su_canon(const QuadExtCtx& E, const SUElem& g) {
  const FieldCtx& F = E.base();
  if (F.p() == 2) return g;
  // First nonzero coordinate of (a,b), then its first nonzero coefficient in
  // the (u,v) coefficient chain; flip the sign to land in [1,(p-1)/2].
  QuadElem lead = (g.a != E.zero()) ? g.a : g.b;
  if (lead == E.zero()) throw std::invalid_argument("su_canon: zero pair");
  int cc = 0;
  for (FieldElem part : {lead.u, lead.v}) {
    if (cc != 0) break;
    for (int c : F.coeffs(part)) {
      if (c != 0) {
        cc = c;
        break;
      }
    }
  }
  if (cc <= (F.p() - 1) / 2) return g;
  return {E.neg(g.a), E.neg(g.b)};
}

SUElem su_mul(const QuadExtCtx& E, const SUElem& x, const SUElem& y) {
  QuadElem a = E.sub(E.mul(x.a, y.a), E.mul(x.b, E.conj(y.b)));
  QuadElem b = E.add(E.mul(x.a, y.b), E.mul(x.b, E.conj(y.a)));
  return su_canon(E, {a, b});
}

SUElem su_inv(const QuadExtCtx& E, const SUElem& x) {
  return su_canon(E, {E.conj(x.a), E.neg(x.b)});
}

QuadMat su_mat(const QuadExtCtx& E, const SUElem& g) {
  return {g.a, g.b, E.neg(E.conj(g.b)), E.conj(g.a)};
}

std::optional<SUElem> su_from_mat(const QuadExtCtx& E, const QuadMat& m) {
  if (m.c != E.neg(E.conj(m.b)) || m.d != E.conj(m.a)) return std::nullopt;
  SUElem g{m.a, m.b};
  if (!su_norm_ok(E, g)) return std::nullopt;
  return su_canon(E, g);
}

namespace {

std::uint64_t su_key(const QuadExtCtx& E, const SUElem& g) {
  return E.index(g.a) * E.q2() + E.index(g.b);
}

}  // namespace

std::vector<SUElem> su_enumerate(const QuadExtCtx& E) {
  const FieldCtx& F = E.base();
  if (F.p() == 2) throw std::invalid_argument("su_enumerate: q must be odd");
  const std::uint64_t q = F.q();

  // Fibers of the norm map GF(q^2) -> GF(q), indexed by norm value.
  std::vector<std::vector<QuadElem>> fiber(F.q());
  for (std::uint64_t i = 0; i < E.q2(); ++i) {
    QuadElem x = E.elem(i);
    fiber[E.norm(x).v].push_back(x);
  }

  std::uint64_t raw = 0;
  std::unordered_set<std::uint64_t> seen;
  std::vector<SUElem> out;
  for (std::uint64_t i = 0; i < E.q2(); ++i) {
    QuadElem a = E.elem(i);
    FieldElem need = F.sub(F.one(), E.norm(a));
    for (QuadElem b : fiber[need.v]) {
      ++raw;
      SUElem g = su_canon(E, {a, b});
      if (seen.insert(su_key(E, g)).second) out.push_back(g);
    }
  }
  if (raw != q * (q * q - 1))
    throw std::logic_error("su_enumerate: raw count != q(q^2-1)");
  if (out.size() * 2 != raw)
    throw std::logic_error("su_enumerate: canonical count != q(q^2-1)/2");
  std::sort(out.begin(), out.end(), [&](const SUElem& x, const SUElem& y) {
    return su_key(E, x) < su_key(E, y);
  });
  return out;
}

SUElem su_standard_involution(const QuadExtCtx& E) {
  if (E.base().q() % 4 != 3)
    throw std::invalid_argument("su_standard_involution: q = 3 (mod 4) required");
  QuadElem i = E.order4_elem();
  SUElem x = su_canon(E, {i, E.zero()});
  if (!su_norm_ok(E, x)) throw std::logic_error("su_standard_involution: norm check failed");
  return x;
}

SUWitness lemma6_witness(const QuadExtCtx& E, const SUElem& y) {
  const FieldCtx& F = E.base();
  if (F.q() % 4 != 3) throw std::invalid_argument("lemma6_witness: q = 3 (mod 4) required");
  if (!su_norm_ok(E, y)) throw std::invalid_argument("lemma6_witness: y not in SU2(q)");

  SUWitness w;
  w.x = su_standard_involution(E);

  // c = b^(q-1) = conj(b)/b when b != 0, else 1.
  if (y.b != E.zero())
    w.c = E.mul(E.conj(y.b), E.inv(y.b));
  else
    w.c = E.one();
  w.left = {E.zero(), E.conj(w.c), E.one(), E.zero()};
  w.right = {E.zero(), E.one(), w.c, E.zero()};

  QuadMat lr = qmat_mul(E, w.left, w.right);
  QuadMat rl = qmat_mul(E, w.right, w.left);
  w.bracket_scalar = qmat_is_scalar(E, lr) && qmat_is_scalar(E, rl) &&
                     E.norm(w.c) == F.one();

  auto conj_by = [&](const SUElem& g) {
    return qmat_mul(E, qmat_mul(E, w.left, su_mat(E, g)), w.right);
  };
  auto proj_eq = [&](const QuadMat& got, const SUElem& want) {
    QuadMat wm = su_mat(E, want);
    QuadMat neg{E.neg(wm.a), E.neg(wm.b), E.neg(wm.c), E.neg(wm.d)};
    auto eq = [&](const QuadMat& u, const QuadMat& v) {
      return u.a == v.a && u.b == v.b && u.c == v.c && u.d == v.d;
    };
    return eq(got, wm) || eq(got, neg);
  };
  w.x_fixed = proj_eq(conj_by(w.x), w.x);
  w.y_inverted = proj_eq(conj_by(y), su_inv(E, y));
  return w;
}

ProjMat standard_involution(const FieldCtx& F) {
  if (F.p() == 2) return {F.one(), F.one(), F.zero(), F.one()};
  if (F.q() % 4 == 1) return {F.one(), F.zero(), F.zero(), F.neg(F.one())};
  throw std::invalid_argument("standard_involution: defined for even q and q = 1 (mod 4)");
}

ConjWitness mixed_witness_even(const FieldCtx& F, const ProjMat& x, const ProjMat& y) {
  if (F.p() != 2) throw std::invalid_argument("mixed_witness_even: q must be even");
  if (x != standard_involution(F))
    throw std::invalid_argument("mixed_witness_even: x must be [[1,1],[0,1]]");

  ConjWitness w;
  if (y.c == F.zero()) {
    // <x,y> sits inside the upper triangular subgroup.
    w.non_generating = true;
    return w;
  }
  FieldElem tr = F.add(y.a, y.d);
  if (tr == F.zero())
    throw std::invalid_argument("mixed_witness_even: y has order <= 2");
  w.h = proj_canon(F, {y.c, tr, F.zero(), y.c});
  ProjMat hinv = mat_inv(F, w.h);
  w.x_fixed = mat_mul(F, mat_mul(F, hinv, x), w.h) == x;
  w.y_inverted = mat_mul(F, mat_mul(F, hinv, proj_canon(F, y)), w.h) ==
                 mat_inv(F, proj_canon(F, y));
  if (!w.x_fixed || !w.y_inverted)
    throw std::logic_error("mixed_witness_even: identity check failed");
  return w;
}

ConjWitness mixed_witness_1mod4(const FieldCtx& F, const ProjMat& x, const ProjMat& y) {
  if (F.q() % 4 != 1 || F.p() == 2)
    throw std::invalid_argument("mixed_witness_1mod4: q = 1 (mod 4) required");
  if (x != standard_involution(F))
    throw std::invalid_argument("mixed_witness_1mod4: x must be [[1,0],[0,-1]]");

  ConjWitness w;
  if (y.b == F.zero() || y.c == F.zero()) {
    // Preimage of <x,y> is contained in a triangular subgroup.
    w.non_generating = true;
    return w;
  }
  w.h = proj_canon(F, {F.zero(), y.b, F.neg(y.c), F.zero()});
  ProjMat hinv = mat_inv(F, w.h);
  w.x_fixed = mat_mul(F, mat_mul(F, hinv, x), w.h) == x;
  w.y_inverted = mat_mul(F, mat_mul(F, hinv, proj_canon(F, y)), w.h) ==
                 mat_inv(F, proj_canon(F, y));
  if (!w.x_fixed || !w.y_inverted)
    throw std::logic_error("mixed_witness_1mod4: identity check failed");
  return w;
}

std::pair<ProjMat, ProjMat> standardize_involution(const GroupTable& T, std::uint32_t g) {
  const FieldCtx& F = T.ctx();
  if (T.order(g) != 2) throw std::invalid_argument("standardize_involution: not an involution");
  ProjMat x0 = standard_involution(F);
  auto sols = solve_conjugator_mats(F, T.mat(g), x0);
  if (sols.empty())
    throw std::logic_error("standardize_involution: no conjugator (single class expected)");
  return {sols.front(), x0};
}

MixedAutResult mixed_nontrivial_aut(const GroupTable& T, std::uint32_t x, std::uint32_t y) {
  const FieldCtx& F = T.ctx();
  if (T.order(x) != 2) throw std::invalid_argument("mixed_nontrivial_aut: o(x) must be 2");
  if (T.order(y) <= 2) throw std::invalid_argument("mixed_nontrivial_aut: o(y) must exceed 2");

  MixedAutResult res;
  const std::uint32_t yinv = T.inv(y);

  if (F.p() == 2 || F.q() % 4 == 1) {
    auto [t, x0] = standardize_involution(T, x);
    ProjMat tinv = mat_inv(F, t);
    ProjMat yprime = mat_mul(F, mat_mul(F, tinv, T.mat(y)), t);
    ConjWitness w = F.p() == 2 ? mixed_witness_even(F, x0, yprime)
                               : mixed_witness_1mod4(F, x0, yprime);
    if (w.non_generating) {
      res.non_generating = true;
      return res;
    }
    res.alpha = {mat_mul(F, mat_mul(F, t, w.h), tinv), 0};
  } else {
    // q = 3 (mod 4): search PGammaL for alpha with x^a = x, y^a = y^-1.
    const ProjMat xm = T.mat(x);
    const ProjMat ym = T.mat(y);
    const ProjMat target = T.mat(yinv);
    bool found = false;
    for (int k = 0; k < F.f() && !found; ++k) {
      ProjMat xf = mat_frob(F, xm, k);
      ProjMat yf = mat_frob(F, ym, k);
      for (const ProjMat& m : solve_conjugator_mats(F, xf, xm)) {
        ProjMat minv = mat_inv(F, m);
        if (mat_mul(F, mat_mul(F, minv, yf), m) == target) {
          res.alpha = {m, k};
          found = true;
          break;
        }
      }
    }
    if (!found)
      throw std::logic_error("mixed_nontrivial_aut: no automorphism found for q=3 mod 4");
  }

  if (aut_is_identity(F, res.alpha))
    throw std::logic_error("mixed_nontrivial_aut: produced the identity");
  if (apply_aut(T, res.alpha, x) != x || apply_aut(T, res.alpha, y) != yinv)
    throw std::logic_error("mixed_nontrivial_aut: witness identities failed");
  return res;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> remark_counterexample(
    const GroupTable& psl, const GroupTable& pgl) {
  std::vector<std::uint32_t> invs = involutions(psl);
  std::vector<std::uint32_t> highs;
  for (std::uint32_t g = 1; g < psl.size(); ++g)
    if (psl.order(g) > 2) highs.push_back(g);

  for (std::uint32_t x : invs) {
    for (std::uint32_t y : highs) {
      std::uint32_t gens[2] = {x, y};
      if (closure(psl, gens).size() == psl.size()) continue;
      std::uint32_t S[3] = {x, y, psl.inv(y)};
      if (set_stabilizer(psl, pgl, S).empty()) return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

}  // namespace grr
