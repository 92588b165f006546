#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "grrlab/autgrp.hpp"
#include "grrlab/quadext.hpp"

namespace grr {

/// Element of SU2(q), the matrix [[a,b],[-b^q,a^q]] over GF(q^2) with
/// a^(q+1) + b^(q+1) = 1. For odd q the pair (a,b) is identified with
/// (-a,-b); the canonical sign puts the lowest nonzero coefficient of the
/// first nonzero coordinate into [1,(p-1)/2].
struct SUElem {
  QuadElem a, b;

  friend bool operator==(const SUElem& x, const SUElem& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator!=(const SUElem& x, const SUElem& y) { return !(x == y); }
};

/// 2x2 matrix over GF(q^2), used for the SU2(q) conjugator checks.
struct QuadMat {
  QuadElem a, b, c, d;
};

QuadMat qmat_mul(const QuadExtCtx& E, const QuadMat& x, const QuadMat& y);
bool qmat_is_scalar(const QuadExtCtx& E, const QuadMat& m);

SUElem su_identity(const QuadExtCtx& E);
bool su_norm_ok(const QuadExtCtx& E, const SUElem& g);  // a^(q+1)+b^(q+1) = 1
SUElem su_canon(const QuadExtCtx& E, const SUElem& g);
SUElem su_mul(const QuadExtCtx& E, const SUElem& x, const SUElem& y);  // canonical
SUElem su_inv(const QuadExtCtx& E, const SUElem& x);

// The full matrix [[a,b],[-b^q,a^q]] of g.
QuadMat su_mat(const QuadExtCtx& E, const SUElem& g);

// Reads a matrix back as a canonical SU element; nullopt when the matrix is
// not of SU shape or fails the norm condition.
std::optional<SUElem> su_from_mat(const QuadExtCtx& E, const QuadMat& m);

// All canonical elements, sorted by (a,b) enumeration index; size q(q^2-1)/2
// for odd q (q(q^2-1) pairs before the sign identification). Throws on even q.
std::vector<SUElem> su_enumerate(const QuadExtCtx& E);

/// Verified conjugation witness inside the SU2(q) model: alpha: g -> P g Q
/// with P, Q projectively mutually inverse, fixing the standard involution
/// x = diag(i,-i) and inverting the given y.
struct SUWitness {
  SUElem x;  // the standard involution used
  QuadMat left, right;
  QuadElem c;
  bool bracket_scalar = false;  // right*left and left*right scalar (c^(q+1)=1)
  bool x_fixed = false;
  bool y_inverted = false;
};

// q = 3 (mod 4). Builds and checks the conjugator for one y.
SUWitness lemma6_witness(const QuadExtCtx& E, const SUElem& y);

// The standard involution diag(i,-i) with i the first order-4 element of
// GF(q^2) in enumeration order; q = 3 (mod 4).
SUElem su_standard_involution(const QuadExtCtx& E);

/// Result of the constructive mixed-set witnesses on the PSL2(q) side.
/// Either a conjugator h with x^h = x and y^h = y^-1, or a certificate that
/// the (standardized) pair cannot generate: the degenerate entry pattern
/// traps <x,y> in a triangular subgroup.
struct ConjWitness {
  bool non_generating = false;
  ProjMat h;
  bool x_fixed = false;
  bool y_inverted = false;
};

// q even; x must be the standard unipotent involution [[1,1],[0,1]].
ConjWitness mixed_witness_even(const FieldCtx& F, const ProjMat& x, const ProjMat& y);

// q = 1 (mod 4); x must be the standard diagonal involution (canonically
// [[1,0],[0,-1]], the image of diag(w,-w) for w of order 4).
ConjWitness mixed_witness_1mod4(const FieldCtx& F, const ProjMat& x, const ProjMat& y);

ProjMat standard_involution(const FieldCtx& F);  // per congruence case of q

// Conjugator t with t^-1 g t = x0 (the standard involution), plus x0 itself.
std::pair<ProjMat, ProjMat> standardize_involution(const GroupTable& T, std::uint32_t g);

/// Witness that the mixed set S = {x, y, y^-1} with o(x)=2, o(y)>2 has a
/// nonidentity setwise stabilizer, or a non-generation certificate when the
/// constructive case degenerates (only possible when <x,y> is proper).
struct MixedAutResult {
  bool non_generating = false;
  SemiAut alpha;
};

MixedAutResult mixed_nontrivial_aut(const GroupTable& T, std::uint32_t x, std::uint32_t y);

// Searches for a pair (x,y) with o(x)=2, o(y)>2 such that <x,y> is proper
// and Aut(G,{x,y,y^-1}) = 1. Returns the first witness in scan order, or
// nullopt when none exists (guaranteed for q = 3 mod 4).
std::optional<std::pair<std::uint32_t, std::uint32_t>> remark_counterexample(
    const GroupTable& psl, const GroupTable& pgl);

}  // namespace grr
