#include "grrlab/pgl2.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace grr {

std::uint64_t mat_key(const ProjMat& m, std::uint32_t q) {
  std::uint64_t k = m.a.v;
  k = k * q + m.b.v;
  k = k * q + m.c.v;
  k = k * q + m.d.v;
  return k;
}

FieldElem mat_det(const FieldCtx& F, const ProjMat& m) {
  return F.sub(F.mul(m.a, m.d), F.mul(m.b, m.c));
}

ProjMat proj_canon(const FieldCtx& F, const ProjMat& raw) {
  if (mat_det(F, raw) == F.zero())
    throw std::invalid_argument("proj_canon: singular matrix");
  FieldElem lead = raw.a;
  if (lead == F.zero()) lead = raw.b;
  if (lead == F.zero()) lead = raw.c;
  if (lead == F.zero()) lead = raw.d;
  if (lead == F.one()) return raw;
  FieldElem s = F.inv(lead);
  return {F.mul(raw.a, s), F.mul(raw.b, s), F.mul(raw.c, s), F.mul(raw.d, s)};
}

ProjMat mat_identity(const FieldCtx& F) {
  return {F.one(), F.zero(), F.zero(), F.one()};
}

ProjMat mat_mul(const FieldCtx& F, const ProjMat& x, const ProjMat& y) {
  ProjMat r{F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)),
            F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
            F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)),
            F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
  return proj_canon(F, r);
}

ProjMat mat_inv(const FieldCtx& F, const ProjMat& x) {
  // Adjugate; projective scaling absorbs the determinant.
  ProjMat r{x.d, F.neg(x.b), F.neg(x.c), x.a};
  return proj_canon(F, r);
}

ProjMat mat_frob(const FieldCtx& F, const ProjMat& x, int k) {
  // Frobenius fixes 0 and 1, so a canonical matrix stays canonical.
  return {F.frobenius(x.a, k), F.frobenius(x.b, k), F.frobenius(x.c, k),
          F.frobenius(x.d, k)};
}

int mat_order(const FieldCtx& F, const ProjMat& x) {
  const ProjMat id = mat_identity(F);
  ProjMat y = proj_canon(F, x);
  int n = 1;
  const int bound = static_cast<int>(F.q()) + 1;
  while (y != id) {
    y = mat_mul(F, y, x);
    ++n;
    if (n > bound) throw std::logic_error("mat_order: exceeded q+1 bound");
  }
  return n;
}

bool in_psl(const FieldCtx& F, const ProjMat& m) {
  return F.is_square(mat_det(F, m));
}

GroupTable::GroupTable(FieldCtx ctx, GroupKind kind) : ctx_(std::move(ctx)), kind_(kind) {
  const FieldCtx& F = ctx_;
  d_ = (F.q() % 2 == 0) ? 1 : 2;
  const bool psl = kind_ == GroupKind::PSL;
  const std::uint32_t q = F.q();
  std::uint64_t expect = static_cast<std::uint64_t>(q) * (static_cast<std::uint64_t>(q) * q - 1);
  if (psl) expect /= static_cast<std::uint64_t>(d_);
  elems_.reserve(expect);

  // a = 1 block: id 0 comes out as the identity matrix.
  for (std::uint32_t b = 0; b < q; ++b)
    for (std::uint32_t c = 0; c < q; ++c)
      for (std::uint32_t dd = 0; dd < q; ++dd) {
        ProjMat m{F.one(), {b}, {c}, {dd}};
        FieldElem det = mat_det(F, m);
        if (det == F.zero()) continue;
        if (psl && !F.is_square(det)) continue;
        elems_.push_back(m);
      }
  // a = 0 block: b = 1 forced, det = -c must be nonzero.
  for (std::uint32_t c = 1; c < q; ++c)
    for (std::uint32_t dd = 0; dd < q; ++dd) {
      ProjMat m{F.zero(), F.one(), {c}, {dd}};
      if (psl && !F.is_square(mat_det(F, m))) continue;
      elems_.push_back(m);
    }

  if (elems_.size() != expect)
    throw std::logic_error("GroupTable: element count mismatch");
  if (elems_[0] != mat_identity(F))
    throw std::logic_error("GroupTable: identity not at id 0");
  build_index();
}

GroupTable::GroupTable(FieldCtx ctx, GroupKind kind, std::vector<ProjMat> elems)
    : ctx_(std::move(ctx)), kind_(kind), elems_(std::move(elems)) {
  d_ = (ctx_.q() % 2 == 0) ? 1 : 2;
  build_index();
}

void GroupTable::build_index() {
  index_.reserve(elems_.size() * 2);
  for (std::uint32_t i = 0; i < elems_.size(); ++i)
    index_.emplace(mat_key(elems_[i], ctx_.q()), i);
}

std::uint32_t GroupTable::id_of(const ProjMat& canonical) const {
  auto it = index_.find(mat_key(canonical, ctx_.q()));
  if (it == index_.end()) throw std::invalid_argument("GroupTable::id_of: not in table");
  return it->second;
}

std::optional<std::uint32_t> GroupTable::find(const ProjMat& canonical) const {
  auto it = index_.find(mat_key(canonical, ctx_.q()));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t GroupTable::mul(std::uint32_t x, std::uint32_t y) const {
  return id_of(mat_mul(ctx_, elems_[x], elems_[y]));
}

std::uint32_t GroupTable::inv(std::uint32_t x) const {
  return id_of(mat_inv(ctx_, elems_[x]));
}

int GroupTable::order(std::uint32_t x) const { return mat_order(ctx_, elems_[x]); }

namespace {

constexpr char kCacheMagic[8] = {'G', 'R', 'R', 'T', 'B', 'L', '0', '\0'};
constexpr std::uint32_t kCacheVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

bool get_u32(std::istream& is, std::uint32_t& v) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) return false;
  v = static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
      (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  return true;
}

void put_u16(std::ostream& os, std::uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8)};
  os.write(reinterpret_cast<const char*>(b), 2);
}

bool get_u16(std::istream& is, std::uint16_t& v) {
  unsigned char b[2];
  if (!is.read(reinterpret_cast<char*>(b), 2)) return false;
  v = static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  return true;
}

}  // namespace

void GroupTable::write_cache(std::ostream& os) const {
  const FieldCtx& F = ctx_;
  os.write(kCacheMagic, 8);
  put_u32(os, kCacheVersion);
  put_u32(os, static_cast<std::uint32_t>(F.p()));
  put_u32(os, static_cast<std::uint32_t>(F.f()));
  for (int c : F.modulus()) put_u32(os, static_cast<std::uint32_t>(c));
  put_u32(os, kind_ == GroupKind::PSL ? 0u : 1u);
  put_u32(os, size());
  // Entries in table order, each a fixed-width little-endian coefficient
  // vector: 4 entries x f coefficients x u16.
  for (const ProjMat& m : elems_)
    for (FieldElem e : {m.a, m.b, m.c, m.d})
      for (int c : F.coeffs(e)) put_u16(os, static_cast<std::uint16_t>(c));
}

std::optional<GroupTable> GroupTable::load_cache(std::istream& is, const FieldCtx& ctx,
                                                 GroupKind kind) {
  char magic[8];
  if (!is.read(magic, 8) || !std::equal(magic, magic + 8, kCacheMagic)) return std::nullopt;
  std::uint32_t version, p, f;
  if (!get_u32(is, version) || version != kCacheVersion) return std::nullopt;
  if (!get_u32(is, p) || p != static_cast<std::uint32_t>(ctx.p())) return std::nullopt;
  if (!get_u32(is, f) || f != static_cast<std::uint32_t>(ctx.f())) return std::nullopt;
  for (int c : ctx.modulus()) {
    std::uint32_t got;
    if (!get_u32(is, got) || got != static_cast<std::uint32_t>(c)) return std::nullopt;
  }
  std::uint32_t kind_code, count;
  if (!get_u32(is, kind_code) || kind_code != (kind == GroupKind::PSL ? 0u : 1u))
    return std::nullopt;
  if (!get_u32(is, count)) return std::nullopt;

  std::vector<ProjMat> elems;
  elems.reserve(count);
  std::vector<int> coeffs(ctx.f());
  for (std::uint32_t i = 0; i < count; ++i) {
    FieldElem e[4];
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < ctx.f(); ++k) {
        std::uint16_t c;
        if (!get_u16(is, c)) return std::nullopt;
        if (c >= ctx.p()) return std::nullopt;
        coeffs[k] = c;
      }
      e[j] = ctx.from_coeffs(coeffs);
    }
    elems.push_back({e[0], e[1], e[2], e[3]});
  }
  if (elems.empty() || elems[0] != mat_identity(ctx)) return std::nullopt;
  return GroupTable(ctx, kind, std::move(elems));
}

std::string GroupTable::cache_filename(const FieldCtx& ctx, GroupKind kind) {
  std::ostringstream os;
  os << (kind == GroupKind::PSL ? "psl2" : "pgl2") << "_p" << ctx.p() << "_f" << ctx.f()
     << ".tbl";
  return os.str();
}

std::vector<std::uint32_t> involutions(const GroupTable& T) {
  std::vector<std::uint32_t> out;
  const FieldCtx& F = T.ctx();
  const ProjMat id = mat_identity(F);
  for (std::uint32_t g = 1; g < T.size(); ++g)
    if (mat_mul(F, T.mat(g), T.mat(g)) == id) out.push_back(g);
  return out;
}

std::vector<std::uint32_t> closure(const GroupTable& T,
                                   std::span<const std::uint32_t> gens) {
  if (gens.empty()) throw std::invalid_argument("closure: empty generator set");
  std::vector<std::uint8_t> seen(T.size(), 0);
  std::vector<std::uint32_t> queue;
  seen[0] = 1;
  queue.push_back(0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint32_t u = queue[head];
    for (std::uint32_t s : gens) {
      std::uint32_t w = T.mul(u, s);
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

std::vector<std::uint32_t> centralizer(const GroupTable& T, std::uint32_t g) {
  std::vector<std::uint32_t> out;
  const FieldCtx& F = T.ctx();
  const ProjMat& gm = T.mat(g);
  for (std::uint32_t h = 0; h < T.size(); ++h)
    if (mat_mul(F, T.mat(h), gm) == mat_mul(F, gm, T.mat(h))) out.push_back(h);
  return out;
}

std::vector<std::uint32_t> conj_class(const GroupTable& T, std::uint32_t g) {
  std::vector<std::uint8_t> seen(T.size(), 0);
  const FieldCtx& F = T.ctx();
  const ProjMat& gm = T.mat(g);
  for (std::uint32_t h = 0; h < T.size(); ++h) {
    const ProjMat& hm = T.mat(h);
    ProjMat c = mat_mul(F, mat_mul(F, mat_inv(F, hm), gm), hm);
    seen[T.id_of(c)] = 1;
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < T.size(); ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

bool is_conjugate(const GroupTable& T, std::uint32_t g, std::uint32_t h) {
  const FieldCtx& F = T.ctx();
  const ProjMat& gm = T.mat(g);
  const ProjMat& hm = T.mat(h);
  for (std::uint32_t m = 0; m < T.size(); ++m) {
    const ProjMat& mm = T.mat(m);
    if (mat_mul(F, gm, mm) == mat_mul(F, mm, hm)) return true;
  }
  return false;
}

DihedralPair max_dihedral_pair(const GroupTable& T) {
  if (T.kind() != GroupKind::PSL)
    throw std::invalid_argument("max_dihedral_pair: PSL table required");
  const FieldCtx& F = T.ctx();
  if (F.q() < 5) throw std::invalid_argument("max_dihedral_pair: q >= 5 required");
  const int target = static_cast<int>((F.q() + 1) / static_cast<std::uint32_t>(T.d()));

  std::uint32_t rot = 0;
  for (std::uint32_t g = 1; g < T.size(); ++g) {
    if (T.order(g) == target) {
      rot = g;
      break;
    }
  }
  if (rot == 0) throw std::logic_error("max_dihedral_pair: no element of order (q+1)/d");

  const ProjMat& am = T.mat(rot);
  const ProjMat am_inv = mat_inv(F, am);
  std::uint32_t t = 0;
  const ProjMat id = mat_identity(F);
  for (std::uint32_t g = 1; g < T.size(); ++g) {
    const ProjMat& gm = T.mat(g);
    if (mat_mul(F, gm, gm) != id) continue;
    // t inverts a: t a t = a^-1 (t is its own inverse).
    if (mat_mul(F, mat_mul(F, gm, am), gm) == am_inv) {
      t = g;
      break;
    }
  }
  if (t == 0) throw std::logic_error("max_dihedral_pair: no inverting involution");

  DihedralPair pair;
  pair.x = t;
  pair.y = T.mul(t, rot);
  pair.rotation = rot;
  std::uint32_t gens[2] = {pair.x, pair.y};
  pair.subgroup = closure(T, gens);
  const std::size_t expect = 2 * (F.q() + 1) / static_cast<std::uint32_t>(T.d());
  if (pair.subgroup.size() != expect)
    throw std::logic_error("max_dihedral_pair: unexpected subgroup order");
  return pair;
}

std::vector<std::uint32_t> generating_subset(const GroupTable& T,
                                             std::span<const std::uint32_t> subgroup) {
  std::vector<std::uint32_t> gens;
  std::vector<std::uint8_t> have(T.size(), 0);
  have[0] = 1;
  std::size_t covered = 1;
  for (std::uint32_t h : subgroup) {
    if (have[h]) continue;
    gens.push_back(h);
    auto c = closure(T, gens);
    covered = c.size();
    for (std::uint32_t x : c) have[x] = 1;
    if (covered == subgroup.size()) break;
  }
  return gens;
}

bool is_maximal(const GroupTable& T, std::span<const std::uint32_t> subgroup) {
  // Closure check on the input.
  std::vector<std::uint8_t> in_h(T.size(), 0);
  for (std::uint32_t h : subgroup) in_h[h] = 1;
  if (subgroup.empty() || !in_h[0])
    throw std::invalid_argument("is_maximal: subgroup must contain the identity");
  for (std::uint32_t a : subgroup)
    for (std::uint32_t b : subgroup)
      if (!in_h[T.mul(a, b)])
        throw std::invalid_argument("is_maximal: input not closed under multiplication");
  if (subgroup.size() >= T.size()) throw std::invalid_argument("is_maximal: not proper");

  std::vector<std::uint32_t> hgens = generating_subset(T, subgroup);

  // <H,g> depends only on the double coset HgH, so one closure per coset.
  std::vector<std::uint8_t> processed = in_h;
  for (std::uint32_t g = 0; g < T.size(); ++g) {
    if (processed[g]) continue;
    std::vector<std::uint32_t> gens = hgens;
    gens.push_back(g);
    if (closure(T, gens).size() != T.size()) return false;
    for (std::uint32_t h1 : subgroup) {
      std::uint32_t h1g = T.mul(h1, g);
      for (std::uint32_t h2 : subgroup) processed[T.mul(h1g, h2)] = 1;
    }
  }
  return true;
}

long long involution_count_formula(std::uint64_t q, int p) {
  if (p == 2) return static_cast<long long>(q * q - 1);
  if (q % 4 == 1) return static_cast<long long>(q * (q + 1) / 2);
  return static_cast<long long>(q * (q - 1) / 2);
}

GroupTable make_group_table(const FieldCtx& ctx, GroupKind kind,
                            const std::string& cache_dir) {
  if (!cache_dir.empty()) {
    std::string path = cache_dir + "/" + GroupTable::cache_filename(ctx, kind);
    {
      std::ifstream in(path, std::ios::binary);
      if (in) {
        auto loaded = GroupTable::load_cache(in, ctx, kind);
        if (loaded) return std::move(*loaded);
      }
    }
    GroupTable T(ctx, kind);
    std::ofstream out(path, std::ios::binary);
    if (out) T.write_cache(out);
    return T;
  }
  return GroupTable(ctx, kind);
}

}  // namespace grr
