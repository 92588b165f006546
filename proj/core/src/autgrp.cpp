#include "grrlab/autgrp.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <unordered_set>

#include "grrlab/parallel.hpp"

namespace grr {

SemiAut aut_identity(const FieldCtx& F) { return {mat_identity(F), 0}; }

bool aut_is_identity(const FieldCtx& F, const SemiAut& a) {
  return a.k == 0 && a.m == mat_identity(F);
}

bool aut_equal(const SemiAut& a, const SemiAut& b) { return a.k == b.k && a.m == b.m; }

ProjMat apply_aut_mat(const FieldCtx& F, const SemiAut& a, const ProjMat& g) {
  ProjMat fg = mat_frob(F, g, a.k);
  return mat_mul(F, mat_mul(F, mat_inv(F, a.m), fg), a.m);
}

std::uint32_t apply_aut(const GroupTable& T, const SemiAut& a, std::uint32_t g) {
  return T.id_of(apply_aut_mat(T.ctx(), a, T.mat(g)));
}

SemiAut aut_compose(const FieldCtx& F, const SemiAut& a1, const SemiAut& a2) {
  SemiAut r;
  r.k = (a1.k + a2.k) % F.f();
  r.m = mat_mul(F, mat_frob(F, a1.m, a2.k), a2.m);
  return r;
}

SemiAut aut_inverse(const FieldCtx& F, const SemiAut& a) {
  SemiAut r;
  r.k = (F.f() - a.k) % F.f();
  r.m = mat_inv(F, mat_frob(F, a.m, r.k));
  return r;
}

std::vector<SemiAut> aut_enumerate(const GroupTable& pgl) {
  if (pgl.kind() != GroupKind::PGL)
    throw std::invalid_argument("aut_enumerate: PGL table required");
  const int f = pgl.ctx().f();
  std::vector<SemiAut> out;
  out.reserve(static_cast<std::size_t>(pgl.size()) * f);
  for (int k = 0; k < f; ++k)
    for (std::uint32_t i = 0; i < pgl.size(); ++i) out.push_back({pgl.mat(i), k});
  return out;
}

std::vector<SemiAut> set_stabilizer(const GroupTable& psl, const GroupTable& pgl,
                                    std::span<const std::uint32_t> S) {
  if (S.empty()) throw std::invalid_argument("set_stabilizer: empty S");
  const FieldCtx& F = psl.ctx();
  std::vector<std::uint32_t> target(S.begin(), S.end());
  std::sort(target.begin(), target.end());

  std::vector<SemiAut> out;
  std::vector<std::uint32_t> image(target.size());
  for (int k = 0; k < F.f(); ++k) {
    for (std::uint32_t i = 0; i < pgl.size(); ++i) {
      SemiAut a{pgl.mat(i), k};
      if (aut_is_identity(F, a)) continue;
      ProjMat minv = mat_inv(F, a.m);
      bool ok = true;
      for (std::size_t j = 0; j < target.size(); ++j) {
        ProjMat im = mat_mul(F, mat_mul(F, minv, mat_frob(F, psl.mat(target[j]), k)), a.m);
        auto id = psl.find(im);
        if (!id || !std::binary_search(target.begin(), target.end(), *id)) {
          ok = false;
          break;
        }
        image[j] = *id;
      }
      if (!ok) continue;
      std::sort(image.begin(), image.end());
      if (image == target) out.push_back(a);
    }
  }
  return out;
}

namespace {

using Vec4 = std::array<FieldElem, 4>;

// Kernel basis of a 4x4 homogeneous system over GF(q).
std::vector<Vec4> kernel4(const FieldCtx& F, std::array<Vec4, 4> M) {
  std::array<int, 4> pivot_col{-1, -1, -1, -1};
  int rank = 0;
  for (int col = 0; col < 4 && rank < 4; ++col) {
    int pr = -1;
    for (int r = rank; r < 4; ++r)
      if (M[r][col] != F.zero()) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(M[rank], M[pr]);
    FieldElem inv = F.inv(M[rank][col]);
    for (int c = 0; c < 4; ++c) M[rank][c] = F.mul(M[rank][c], inv);
    for (int r = 0; r < 4; ++r) {
      if (r == rank || M[r][col] == F.zero()) continue;
      FieldElem factor = M[r][col];
      for (int c = 0; c < 4; ++c)
        M[r][c] = F.sub(M[r][c], F.mul(factor, M[rank][c]));
    }
    pivot_col[rank] = col;
    ++rank;
  }
  std::array<bool, 4> is_pivot{false, false, false, false};
  for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
  std::vector<Vec4> basis;
  for (int fc = 0; fc < 4; ++fc) {
    if (is_pivot[fc]) continue;
    Vec4 v{F.zero(), F.zero(), F.zero(), F.zero()};
    v[fc] = F.one();
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = F.neg(M[r][fc]);
    basis.push_back(v);
  }
  return basis;
}

}  // namespace

std::vector<ProjMat> solve_conjugator_mats(const FieldCtx& F, const ProjMat& A,
                                           const ProjMat& B) {
  std::vector<ProjMat> out;
  const std::uint32_t q = F.q();
  for (std::uint32_t lv = 1; lv < q; ++lv) {
    FieldElem l{lv};
    FieldElem lb0 = F.mul(l, B.a), lb1 = F.mul(l, B.b);
    FieldElem lb2 = F.mul(l, B.c), lb3 = F.mul(l, B.d);
    std::array<Vec4, 4> sys{
        Vec4{F.sub(A.a, lb0), F.neg(lb2), A.b, F.zero()},
        Vec4{F.neg(lb1), F.sub(A.a, lb3), F.zero(), A.b},
        Vec4{A.c, F.zero(), F.sub(A.d, lb0), F.neg(lb2)},
        Vec4{F.zero(), A.c, F.neg(lb1), F.sub(A.d, lb3)}};
    auto basis = kernel4(F, sys);
    if (basis.empty()) continue;
    const int r = static_cast<int>(basis.size());
    // One representative per projective kernel point: leading coefficient 1.
    std::vector<std::uint32_t> tail(r > 1 ? r - 1 : 0, 0);
    for (int lead = 0; lead < r; ++lead) {
      const int free_digits = r - 1 - lead;
      std::uint64_t combos = 1;
      for (int i = 0; i < free_digits; ++i) combos *= q;
      for (std::uint64_t cidx = 0; cidx < combos; ++cidx) {
        Vec4 v = basis[lead];
        std::uint64_t t = cidx;
        for (int i = 0; i < free_digits; ++i) {
          FieldElem c{static_cast<std::uint32_t>(t % q)};
          t /= q;
          if (c == F.zero()) continue;
          const Vec4& b = basis[lead + 1 + i];
          for (int j = 0; j < 4; ++j) v[j] = F.add(v[j], F.mul(c, b[j]));
        }
        ProjMat m{v[0], v[1], v[2], v[3]};
        if (mat_det(F, m) == F.zero()) continue;
        out.push_back(proj_canon(F, m));
      }
    }
  }
  std::sort(out.begin(), out.end(), [&](const ProjMat& x, const ProjMat& y) {
    return mat_key(x, q) < mat_key(y, q);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ConjugatorSet solve_conjugator(const GroupTable& T, std::uint32_t g, std::uint32_t h) {
  ConjugatorSet result;
  if (g == T.identity() && h == T.identity()) {
    result.whole_group = true;  // everything commutes with the identity
    return result;
  }
  if (g == T.identity() || h == T.identity()) return result;  // empty
  result.mats = solve_conjugator_mats(T.ctx(), T.mat(g), T.mat(h));
  return result;
}

StabilizerProbe::StabilizerProbe(const GroupTable& psl, std::uint32_t x, std::uint32_t y)
    : T_(psl), x_(x), y_(y) {
  const FieldCtx& F = T_.ctx();
  if (x == T_.identity() || y == T_.identity() || x == y)
    throw std::invalid_argument("StabilizerProbe: x, y must be distinct nonidentity");
  const int f = F.f();
  const ProjMat xm = T_.mat(x), ym = T_.mat(y);
  xmat_frob_.resize(f);
  ymat_frob_.resize(f);

  auto add_all = [&](std::vector<Cand>& dst, const std::vector<ProjMat>& mats, int k) {
    for (const ProjMat& m : mats) dst.push_back({m, mat_inv(F, m), k});
  };
  std::vector<std::vector<std::uint64_t>> yy_keys(f);
  for (int k = 0; k < f; ++k) {
    xmat_frob_[k] = mat_frob(F, xm, k);
    ymat_frob_[k] = mat_frob(F, ym, k);
    add_all(xx_, solve_conjugator_mats(F, xmat_frob_[k], xm), k);
    add_all(xy_, solve_conjugator_mats(F, xmat_frob_[k], ym), k);
    add_all(yx_, solve_conjugator_mats(F, ymat_frob_[k], xm), k);
    add_all(yy_, solve_conjugator_mats(F, ymat_frob_[k], ym), k);
  }

  // z-independent candidates: m fixing both x and y, or swapping them.
  auto intersect = [&](const std::vector<Cand>& lhs, const std::vector<Cand>& rhs,
                       std::vector<Cand>& dst, bool drop_identity) {
    std::vector<std::unordered_set<std::uint64_t>> keys(f);
    for (const Cand& c : rhs) keys[c.k].insert(mat_key(c.m, F.q()));
    const ProjMat id = mat_identity(F);
    for (const Cand& c : lhs) {
      if (!keys[c.k].count(mat_key(c.m, F.q()))) continue;
      if (drop_identity && c.k == 0 && c.m == id) continue;
      dst.push_back(c);
    }
  };
  intersect(xx_, yy_, fix_both_, true);
  intersect(xy_, yx_, swap_xy_, false);
}

template <bool CollectAll>
bool StabilizerProbe::scan(std::uint32_t z, std::vector<SemiAut>* out) const {
  const FieldCtx& F = T_.ctx();
  const int f = F.f();
  const ProjMat zm = T_.mat(z);
  const ProjMat xm = T_.mat(x_), ym = T_.mat(y_);
  std::vector<ProjMat> zfrob(f);
  for (int k = 0; k < f; ++k) zfrob[k] = mat_frob(F, zm, k);

  auto conj = [&](const Cand& c, const ProjMat& gfrob) {
    return mat_mul(F, mat_mul(F, c.minv, gfrob), c.m);
  };
  auto emit = [&](const Cand& c) -> bool {
    if constexpr (CollectAll) {
      out->push_back({c.m, c.k});
      return true;  // keep scanning
    }
    return false;  // stop: a nonidentity stabilizing automorphism exists
  };

  // sigma by images of (x, y): (x,y) and (y,x) pin z; the other four move z.
  for (const Cand& c : fix_both_)
    if (conj(c, zfrob[c.k]) == zm && !emit(c)) return false;
  for (const Cand& c : swap_xy_)
    if (conj(c, zfrob[c.k]) == zm && !emit(c)) return false;
  for (const Cand& c : xx_)  // x->x, y->z, z->y
    if (conj(c, ymat_frob_[c.k]) == zm && conj(c, zfrob[c.k]) == ym && !emit(c))
      return false;
  for (const Cand& c : yy_)  // y->y, x->z, z->x
    if (conj(c, xmat_frob_[c.k]) == zm && conj(c, zfrob[c.k]) == xm && !emit(c))
      return false;
  for (const Cand& c : xy_)  // x->y, y->z, z->x
    if (conj(c, ymat_frob_[c.k]) == zm && conj(c, zfrob[c.k]) == xm && !emit(c))
      return false;
  for (const Cand& c : yx_)  // y->x, x->z, z->y
    if (conj(c, xmat_frob_[c.k]) == zm && conj(c, zfrob[c.k]) == ym && !emit(c))
      return false;
  return true;
}

bool StabilizerProbe::triple_stab_trivial(std::uint32_t z) const {
  if (z == x_ || z == y_)
    throw std::invalid_argument("StabilizerProbe: z must differ from x and y");
  return scan<false>(z, nullptr);
}

std::vector<SemiAut> StabilizerProbe::triple_stabilizer(std::uint32_t z) const {
  if (z == x_ || z == y_)
    throw std::invalid_argument("StabilizerProbe: z must differ from x and y");
  std::vector<SemiAut> out;
  scan<true>(z, &out);
  const std::uint32_t q = T_.ctx().q();
  std::sort(out.begin(), out.end(), [&](const SemiAut& a, const SemiAut& b) {
    if (a.k != b.k) return a.k < b.k;
    return mat_key(a.m, q) < mat_key(b.m, q);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const SemiAut& a, const SemiAut& b) { return aut_equal(a, b); }),
            out.end());
  return out;
}

std::vector<SemiAut> pair_stabilizer_fast(const GroupTable& psl,
                                          std::span<const std::uint32_t> S) {
  if (S.size() != 3) throw std::invalid_argument("pair_stabilizer_fast: |S| must be 3");
  std::array<std::uint32_t, 3> s{S[0], S[1], S[2]};
  std::sort(s.begin(), s.end());
  if (s[0] == s[1] || s[1] == s[2])
    throw std::invalid_argument("pair_stabilizer_fast: S must have 3 distinct elements");
  StabilizerProbe probe(psl, s[0], s[1]);
  return probe.triple_stabilizer(s[2]);
}

std::vector<std::uint32_t> compute_L(const GroupTable& T, std::uint32_t x, std::uint32_t y) {
  const FieldCtx& F = T.ctx();
  const ProjMat xm = T.mat(x), ym = T.mat(y);
  std::unordered_set<std::uint32_t> acc;
  for (int k = 0; k < F.f(); ++k) {
    ProjMat xf = mat_frob(F, xm, k);
    ProjMat yf = mat_frob(F, ym, k);
    auto collect = [&](const std::vector<ProjMat>& mats, const ProjMat& gfrob) {
      for (const ProjMat& m : mats) {
        ProjMat im = mat_mul(F, mat_mul(F, mat_inv(F, m), gfrob), m);
        acc.insert(T.id_of(im));
      }
    };
    collect(solve_conjugator_mats(F, xf, xm), yf);  // {y^a : x^a = x}
    collect(solve_conjugator_mats(F, xf, ym), yf);  // {y^a : x^a = y}
    collect(solve_conjugator_mats(F, yf, xm), xf);  // {x^a : y^a = x}
    collect(solve_conjugator_mats(F, yf, ym), xf);  // {x^a : y^a = y}
  }
  std::vector<std::uint32_t> out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SemiAut> compute_I(const GroupTable& T, std::uint32_t x, std::uint32_t y) {
  if (x == y) throw std::invalid_argument("compute_I: x and y must be distinct");
  const FieldCtx& F = T.ctx();
  const ProjMat xm = T.mat(x), ym = T.mat(y);
  std::vector<SemiAut> out;
  for (int k = 0; k < F.f(); ++k) {
    ProjMat xf = mat_frob(F, xm, k);
    ProjMat yf = mat_frob(F, ym, k);
    auto to_y = solve_conjugator_mats(F, xf, ym);
    auto to_x = solve_conjugator_mats(F, yf, xm);
    std::unordered_set<std::uint64_t> keys;
    for (const ProjMat& m : to_x) keys.insert(mat_key(m, F.q()));
    for (const ProjMat& m : to_y) {
      if (!keys.count(mat_key(m, F.q()))) continue;
      SemiAut a{m, k};
      if (aut_is_identity(F, a)) continue;
      SemiAut sq = aut_compose(F, a, a);
      if (aut_is_identity(F, sq)) out.push_back(a);
    }
  }
  return out;
}

IngredientReport count_valid_z(const GroupTable& T, const DihedralPair& pair,
                               const ValidZOptions& opts) {
  const FieldCtx& F = T.ctx();
  if (F.q() < 11) throw std::invalid_argument("count_valid_z: q >= 11 required");
  const long long q = F.q();
  const long long d = T.d();
  const long long f = F.f();
  const std::size_t expect_h = static_cast<std::size_t>(2 * (q + 1) / d);
  if (pair.subgroup.size() != expect_h)
    throw std::invalid_argument("count_valid_z: (x,y) must generate D_{2(q+1)/d}");

  IngredientReport rep;
  rep.q = F.q();
  rep.p = F.p();
  rep.f = F.f();
  rep.d = T.d();
  rep.boundB_num = q * q - 4 * d * d * f * q - (d + 2) * q - 4 * d * d * f - 3 * d * d +
                   2 * d - 1;
  rep.boundB_den = d;
  rep.eq2_bound_num = q * q - (d + 2) * q - 3 * d * d + 2 * d - 1;
  rep.eq2_bound_den = d;

  rep.L = compute_L(T, pair.x, pair.y);
  rep.I = compute_I(T, pair.x, pair.y);
  if (static_cast<long long>(rep.L.size()) > 4 * d * f * (q + 1))
    throw std::logic_error("count_valid_z: |L| exceeds the 4df(q+1) bound");
  if (static_cast<long long>(rep.I.size()) > d)
    throw std::logic_error("count_valid_z: |I| exceeds d");
  for (const SemiAut& a : rep.I)
    if (a.k != 0) throw std::logic_error("count_valid_z: member of I outside PGL2(q)");

  std::vector<std::uint8_t> in_h(T.size(), 0);
  for (std::uint32_t h : pair.subgroup) in_h[h] = 1;

  const std::vector<std::uint32_t> V = involutions(T);
  rep.nV = static_cast<long long>(V.size());
  for (std::uint32_t v : V)
    if (in_h[v]) ++rep.nVinH;

  // Eq.(2) ingredient: involutions outside H fixed by no member of I.
  rep.nEq2Avoiding = parallel_count(V.size(), opts.jobs, [&](std::size_t i) {
    std::uint32_t z = V[i];
    if (in_h[z]) return false;
    for (const SemiAut& a : rep.I)
      if (apply_aut(T, a, z) == z) return false;
    return true;
  });

  bool shortcut = false;
  if (opts.use_maximality_shortcut) {
    shortcut = is_maximal(T, pair.subgroup);
    rep.maximal_certified = shortcut;
  }

  StabilizerProbe probe(T, pair.x, pair.y);
  rep.nValidZ = parallel_count(V.size(), opts.jobs, [&](std::size_t i) {
    std::uint32_t z = V[i];
    if (z == pair.x || z == pair.y) return false;
    if (shortcut) {
      if (in_h[z]) return false;
    } else {
      std::uint32_t g3[3] = {pair.x, pair.y, z};
      if (closure(T, g3).size() != T.size()) return false;
    }
    return probe.triple_stab_trivial(z);
  });
  return rep;
}

}  // namespace grr
