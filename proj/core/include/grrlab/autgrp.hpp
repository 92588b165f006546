#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "grrlab/pgl2.hpp"

namespace grr {

/// Element of PGammaL2(q) = Aut(PSL2(q)): a PGL2(q) matrix part m and a
/// Frobenius exponent k in [0,f). Action on g: apply the entrywise field
/// Frobenius x -> x^(p^k) to the canonical representative of g first, then
/// conjugate by m, i.e. g -> m^-1 g^(phi^k) m. Composition below follows
/// from this order: (m1,k1) then (m2,k2) = (m1^(phi^k2) * m2, k1+k2 mod f).
struct SemiAut {
  ProjMat m;
  int k = 0;
};

SemiAut aut_identity(const FieldCtx& F);
bool aut_is_identity(const FieldCtx& F, const SemiAut& a);
bool aut_equal(const SemiAut& a, const SemiAut& b);

ProjMat apply_aut_mat(const FieldCtx& F, const SemiAut& a, const ProjMat& g);
std::uint32_t apply_aut(const GroupTable& T, const SemiAut& a, std::uint32_t g);

// alpha1 followed by alpha2.
SemiAut aut_compose(const FieldCtx& F, const SemiAut& a1, const SemiAut& a2);
SemiAut aut_inverse(const FieldCtx& F, const SemiAut& a);

// All f*q(q^2-1) automorphisms: (m, k) over the PGL table and k in [0,f).
std::vector<SemiAut> aut_enumerate(const GroupTable& pgl);

// Brute-force reference: nonidentity automorphisms fixing S setwise.
std::vector<SemiAut> set_stabilizer(const GroupTable& psl, const GroupTable& pgl,
                                    std::span<const std::uint32_t> S);

/// Solutions M in PGL2(q) of M^-1 g M = h (projectively). When g = h = the
/// identity the whole group would come back; a size guard returns the
/// whole_group marker instead and callers must special-case central g.
struct ConjugatorSet {
  bool whole_group = false;
  std::vector<ProjMat> mats;  // canonical, sorted by mat_key
};

ConjugatorSet solve_conjugator(const GroupTable& T, std::uint32_t g, std::uint32_t h);

// Matrix-level core: all canonical M with A M = lambda M B for some lambda.
// A and B must be canonical and non-scalar.
std::vector<ProjMat> solve_conjugator_mats(const FieldCtx& F, const ProjMat& A,
                                           const ProjMat& B);

// Same contract as set_stabilizer for a generating 3-element S, via
// conjugator solving on two elements and filtering on the third.
std::vector<SemiAut> pair_stabilizer_fast(const GroupTable& psl,
                                          std::span<const std::uint32_t> S);

/// Precomputed per-(x,y) solution lists for the per-z stabilizer test used
/// by the census loops: for each Frobenius exponent k, the solution sets of
/// x -> x, x -> y, y -> x, y -> y, plus the two z-independent intersections.
class StabilizerProbe {
 public:
  StabilizerProbe(const GroupTable& psl, std::uint32_t x, std::uint32_t y);

  // True iff Aut(G,{x,y,z}) = 1. z must be distinct from x and y.
  bool triple_stab_trivial(std::uint32_t z) const;

  // Nonidentity automorphisms fixing {x,y,z} setwise (complete list).
  std::vector<SemiAut> triple_stabilizer(std::uint32_t z) const;

 private:
  struct Cand {
    ProjMat m, minv;
    int k;
  };
  // Appends the automorphisms for one S-bijection case; returns false to
  // stop early (trivial test only needs existence).
  template <bool CollectAll>
  bool scan(std::uint32_t z, std::vector<SemiAut>* out) const;

  const GroupTable& T_;
  std::uint32_t x_, y_;
  std::vector<ProjMat> xmat_frob_, ymat_frob_;  // per k
  std::vector<Cand> xx_, xy_, yx_, yy_;         // solution cosets, all k
  std::vector<Cand> fix_both_;                  // xx & yy, identity removed
  std::vector<Cand> swap_xy_;                   // xy & yx
};

// L = {y^a : x^a = x} u {y^a : x^a = y} u {x^a : y^a = x} u {x^a : y^a = y},
// over all automorphisms a; sorted ids. |L| <= 4df(q+1).
std::vector<std::uint32_t> compute_L(const GroupTable& T, std::uint32_t x, std::uint32_t y);

// Involutory automorphisms swapping x and y. |I| <= d, and every member has
// Frobenius exponent 0 (checked).
std::vector<SemiAut> compute_I(const GroupTable& T, std::uint32_t x, std::uint32_t y);

/// Counting ingredients for the valid-z census at a dihedral pair (x,y).
struct IngredientReport {
  std::uint64_t q = 0;
  int p = 0, f = 0, d = 0;
  std::vector<std::uint32_t> L;
  std::vector<SemiAut> I;
  long long nV = 0;          // involutions in G
  long long nVinH = 0;       // involutions inside H
  long long nValidZ = 0;     // z with <x,y,z> = G and trivial stabilizer
  long long nEq2Avoiding = 0;  // involutions outside H fixed by no member of I
  long long boundB_num = 0;  // exact bound, numerator over denominator d
  long long boundB_den = 1;
  long long eq2_bound_num = 0;
  long long eq2_bound_den = 1;
  bool maximal_certified = false;  // generation shortcut was justified
};

struct ValidZOptions {
  bool use_maximality_shortcut = true;  // certify is_maximal once, then z not in H
  int jobs = 1;
};

// q >= 11; (x,y) must generate the dihedral subgroup of order 2(q+1)/d.
IngredientReport count_valid_z(const GroupTable& T, const DihedralPair& pair,
                               const ValidZOptions& opts = {});

}  // namespace grr
