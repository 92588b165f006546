#pragma once

#include "grrlab/gf.hpp"

namespace grr {

/// Element u + v*t of the quadratic extension GF(q^2) over a base GF(q).
struct QuadElem {
  FieldElem u, v;

  friend bool operator==(QuadElem a, QuadElem b) { return a.u == b.u && a.v == b.v; }
  friend bool operator!=(QuadElem a, QuadElem b) { return !(a == b); }
};

enum class QuadKind { Odd, Even };

/// GF(q^2) as an explicit degree-2 extension of GF(q).
///
/// For odd q: t^2 = s with s the first nonsquare in base enumeration order.
/// For even q: t^2 + t = s with s the first element of absolute trace 1.
/// Conjugation x -> x^q is a coordinate map (u,v) -> (u,-v) resp. (u+v,v),
/// which is why the extension is built this way instead of as GF(p^(2f)).
class QuadExtCtx {
 public:
  explicit QuadExtCtx(FieldCtx base);

  const FieldCtx& base() const { return base_; }
  QuadKind kind() const { return kind_; }
  FieldElem s() const { return s_; }
  std::uint32_t q() const { return base_.q(); }
  std::uint64_t q2() const { return static_cast<std::uint64_t>(q()) * q(); }

  QuadElem zero() const { return {base_.zero(), base_.zero()}; }
  QuadElem one() const { return {base_.one(), base_.zero()}; }
  QuadElem t() const { return {base_.zero(), base_.one()}; }
  QuadElem embed(FieldElem x) const { return {x, base_.zero()}; }
  bool in_base(QuadElem x) const { return x.v == base_.zero(); }

  // Enumeration order: index = u + q * v.
  QuadElem elem(std::uint64_t index) const;
  std::uint64_t index(QuadElem x) const { return x.u.v + static_cast<std::uint64_t>(q()) * x.v.v; }

  QuadElem add(QuadElem a, QuadElem b) const;
  QuadElem sub(QuadElem a, QuadElem b) const;
  QuadElem neg(QuadElem a) const;
  QuadElem mul(QuadElem a, QuadElem b) const;
  QuadElem inv(QuadElem a) const;  // throws on zero
  QuadElem pow(QuadElem a, long long n) const;

  // x -> x^q, the nontrivial automorphism of GF(q^2)/GF(q).
  QuadElem conj(QuadElem a) const;

  // N(x) = x * x^q = x^(q+1), landing in the base field.
  FieldElem norm(QuadElem a) const;

  // First element of multiplicative order 4 in enumeration order (odd q).
  QuadElem order4_elem() const;

  std::string to_string(QuadElem a) const;

 private:
  FieldCtx base_;
  QuadKind kind_;
  FieldElem s_;
};

}  // namespace grr
