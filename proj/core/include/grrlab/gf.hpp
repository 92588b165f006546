#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace grr {

bool is_prime(std::uint64_t n);

// Decomposes n as p^f with p prime; returns false if n is not a prime power.
bool factor_prime_power(std::uint64_t n, std::uint64_t& p, int& f);

/// Element of GF(p^f). The coefficient tuple (c0,...,c_{f-1}) of the
/// polynomial-basis representation (low degree first) is packed base p into
/// a single integer: v = sum c_i p^i. The packed value is also the element's
/// position in enumeration order, so elements double as dense indices.
/// Elements carry no context; every operation takes the FieldCtx explicitly.
struct FieldElem {
  std::uint32_t v = 0;

  friend bool operator==(FieldElem a, FieldElem b) { return a.v == b.v; }
  friend bool operator!=(FieldElem a, FieldElem b) { return a.v != b.v; }
  friend bool operator<(FieldElem a, FieldElem b) { return a.v < b.v; }
};

/// Arithmetic context for GF(p^f), q = p^f.
///
/// The modulus is the monic irreducible polynomial of degree f over Z_p whose
/// non-leading coefficient tuple (c0,...,c_{f-1}), read as a base-p integer
/// with c0 least significant, is minimal. This makes element enumeration
/// order reproducible across runs and machines. For small fields the
/// multiplication/inverse tables are precomputed; larger fields fall back to
/// digitwise polynomial arithmetic.
///
/// Immutable after construction; all operations are pure and safe to call
/// concurrently.
class FieldCtx {
 public:
  FieldCtx(int p, int f);

  int p() const { return p_; }
  int f() const { return f_; }
  std::uint32_t q() const { return q_; }

  // f+1 coefficients, low degree first, leading coefficient 1.
  const std::vector<int>& modulus() const { return modulus_; }
  std::string modulus_str() const;

  FieldElem zero() const { return {0}; }
  FieldElem one() const { return {1}; }

  // The i-th element in enumeration order, 0 <= i < q.
  FieldElem elem(std::uint32_t index) const;
  FieldElem from_int(long long n) const;  // n mod p, in the prime subfield
  FieldElem from_coeffs(const std::vector<int>& coeffs) const;
  std::vector<int> coeffs(FieldElem x) const;
  std::string to_string(FieldElem x) const;

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem inv(FieldElem a) const;  // throws on zero
  FieldElem pow(FieldElem a, long long n) const;

  // x -> x^(p^k); k is reduced mod f, so frobenius(x, f) == x.
  FieldElem frobenius(FieldElem x, int k) const;

  // True iff x is a square. 0 counts as a square; for even q everything is.
  bool is_square(FieldElem x) const;

  // Multiplicative order of x (least n >= 1 with x^n = 1); throws on zero.
  std::uint32_t mul_order(FieldElem x) const;

 private:
  int p_ = 0;
  int f_ = 0;
  std::uint32_t q_ = 0;
  std::vector<int> modulus_;

  bool tables_ = false;
  std::vector<std::uint32_t> mul_table_;
  std::vector<std::uint32_t> inv_table_;
  std::vector<std::uint8_t> square_table_;

  FieldElem mul_generic(FieldElem a, FieldElem b) const;
  FieldElem inv_generic(FieldElem a) const;
  void build_tables();
};

}  // namespace grr

template <>
struct std::hash<grr::FieldElem> {
  std::size_t operator()(grr::FieldElem x) const noexcept {
    return std::hash<std::uint32_t>{}(x.v);
  }
};
