#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "grrlab/gf.hpp"

namespace grr {

/// Canonicalized invertible 2x2 projective matrix [[a,b],[c,d]] over GF(q).
/// Canonical form: the first nonzero entry in row-major order equals 1, so
/// each projective class has exactly one representative.
struct ProjMat {
  FieldElem a, b, c, d;

  friend bool operator==(const ProjMat& x, const ProjMat& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const ProjMat& x, const ProjMat& y) { return !(x == y); }
};

// Packs the four entry indices base q; doubles as a total order on matrices.
std::uint64_t mat_key(const ProjMat& m, std::uint32_t q);

FieldElem mat_det(const FieldCtx& F, const ProjMat& m);

// Scales to canonical form; throws std::invalid_argument on singular input.
ProjMat proj_canon(const FieldCtx& F, const ProjMat& raw);

ProjMat mat_identity(const FieldCtx& F);
ProjMat mat_mul(const FieldCtx& F, const ProjMat& x, const ProjMat& y);  // canonical
ProjMat mat_inv(const FieldCtx& F, const ProjMat& x);
ProjMat mat_frob(const FieldCtx& F, const ProjMat& x, int k);  // entrywise x -> x^(p^k)

// Least n >= 1 with x^n projectively the identity. Never exceeds q+1.
int mat_order(const FieldCtx& F, const ProjMat& x);

// True iff det of the canonical representative is a square in GF(q).
bool in_psl(const FieldCtx& F, const ProjMat& m);

enum class GroupKind { PSL, PGL };

/// Full indexed enumeration of PSL2(q) or PGL2(q).
///
/// Element ids are dense indices into table order; id 0 is the identity.
/// Table order: matrices with a=1 first, ordered lexicographically by
/// (b,c,d) in element enumeration order, then matrices with a=0, b=1 ordered
/// by (c,d). The order is fixed by the deterministic field modulus, so ids
/// are reproducible across runs and machines.
///
/// Immutable after construction; all queries are pure and safe to share
/// across threads.
class GroupTable {
 public:
  GroupTable(FieldCtx ctx, GroupKind kind);

  const FieldCtx& ctx() const { return ctx_; }
  GroupKind kind() const { return kind_; }
  int d() const { return d_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(elems_.size()); }
  const std::vector<ProjMat>& elems() const { return elems_; }

  const ProjMat& mat(std::uint32_t id) const { return elems_[id]; }
  std::uint32_t id_of(const ProjMat& canonical) const;  // throws if not in table
  std::optional<std::uint32_t> find(const ProjMat& canonical) const;

  std::uint32_t identity() const { return 0; }
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const;
  std::uint32_t inv(std::uint32_t x) const;
  int order(std::uint32_t x) const;

  // Binary table cache. Load returns nullopt on missing/invalid file.
  void write_cache(std::ostream& os) const;
  static std::optional<GroupTable> load_cache(std::istream& is, const FieldCtx& ctx,
                                              GroupKind kind);
  static std::string cache_filename(const FieldCtx& ctx, GroupKind kind);

 private:
  GroupTable(FieldCtx ctx, GroupKind kind, std::vector<ProjMat> elems);
  void build_index();

  FieldCtx ctx_;
  GroupKind kind_;
  int d_;
  std::vector<ProjMat> elems_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

// Builds the table, consulting/filling the binary cache dir if given.
GroupTable make_group_table(const FieldCtx& ctx, GroupKind kind,
                            const std::string& cache_dir = "");

// All elements of order exactly 2, in id order.
std::vector<std::uint32_t> involutions(const GroupTable& T);

// Subgroup generated by gens (breadth-first products); sorted ids.
std::vector<std::uint32_t> closure(const GroupTable& T, std::span<const std::uint32_t> gens);

std::vector<std::uint32_t> centralizer(const GroupTable& T, std::uint32_t g);
std::vector<std::uint32_t> conj_class(const GroupTable& T, std::uint32_t g);
bool is_conjugate(const GroupTable& T, std::uint32_t g, std::uint32_t h);

/// Two involutions generating the dihedral subgroup of order 2(q+1)/d, plus
/// the rotation x*y of order (q+1)/d and the full subgroup element set.
struct DihedralPair {
  std::uint32_t x, y;
  std::uint32_t rotation;
  std::vector<std::uint32_t> subgroup;  // sorted ids, size 2(q+1)/d
};

// Deterministic construction: first element a of order (q+1)/d in table
// order, first involution t inverting it; x = t, y = t*a.
DihedralPair max_dihedral_pair(const GroupTable& T);

// True iff adjoining any element outside the subgroup generates the whole
// group. Requires subgroup to be closed under multiplication (checked).
bool is_maximal(const GroupTable& T, std::span<const std::uint32_t> subgroup);

// Exact involution count of PSL2(q) by congruence class of q.
long long involution_count_formula(std::uint64_t q, int p);

// Small generating subset of an already-closed subgroup (greedy scan).
std::vector<std::uint32_t> generating_subset(const GroupTable& T,
                                             std::span<const std::uint32_t> subgroup);

}  // namespace grr
