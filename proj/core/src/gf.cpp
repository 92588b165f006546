#include "grrlab/gf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace grr {

namespace {

constexpr std::uint32_t kMaxQ = 1u << 16;
constexpr std::uint32_t kTableLimit = 512;  // mul/inv tables up to this q

// Dense polynomials over Z_p, low degree first, entries in [0,p).
using Poly = std::vector<int>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<int>((r[i + j] + static_cast<long long>(a[i]) * b[j]) % p);
  }
  trim(r);
  return r;
}

Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const int lead_inv = [&] {
    // m is monic in all call sites, but solve generically.
    int lead = m.back();
    for (int i = 1; i < p; ++i)
      if (lead * i % p == 1) return i;
    return 1;
  }();
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int da = static_cast<int>(a.size()) - 1;
    const int c = static_cast<int>(static_cast<long long>(a.back()) * lead_inv % p);
    if (c != 0) {
      for (int i = 0; i <= dm; ++i) {
        long long t = a[da - dm + i] - static_cast<long long>(c) * m[i];
        a[da - dm + i] = static_cast<int>(((t % p) + p) % p);
      }
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly poly_powmod(const Poly& base, std::uint64_t e, const Poly& m, int p) {
  Poly result{1};
  Poly b = poly_mod(base, m, p);
  while (e > 0) {
    if (e & 1) result = poly_mod(poly_mul(result, b, p), m, p);
    b = poly_mod(poly_mul(b, b, p), m, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, int p) {
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, int p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
  trim(a);
  return a;
}

// Rabin irreducibility test for a monic degree-f polynomial over Z_p:
// x^(p^f) = x (mod g), and gcd(x^(p^(f/r)) - x, g) = 1 for each prime r | f.
bool poly_irreducible(const Poly& g, int p, int f) {
  if (f == 1) return true;
  const Poly x{0, 1};
  auto pow_pk = [&](int k) {
    std::uint64_t e = 1;
    for (int i = 0; i < k; ++i) e *= static_cast<std::uint64_t>(p);
    return e;
  };
  Poly xqf = poly_powmod(x, pow_pk(f), g, p);
  if (poly_sub(xqf, x, p) != Poly{}) return false;
  int rem = f;
  for (int r = 2; r * r <= rem; ++r) {
    if (rem % r != 0) continue;
    while (rem % r == 0) rem /= r;
    Poly h = poly_sub(poly_powmod(x, pow_pk(f / r), g, p), x, p);
    Poly d = poly_gcd(g, h, p);
    if (d.size() != 1) return false;
  }
  if (rem > 1) {
    Poly h = poly_sub(poly_powmod(x, pow_pk(f / rem), g, p), x, p);
    Poly d = poly_gcd(g, h, p);
    if (d.size() != 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool factor_prime_power(std::uint64_t n, std::uint64_t& p, int& f) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    p = d;
    f = 0;
    while (n > 1) {
      if (n % d != 0) return false;
      n /= d;
      ++f;
    }
    return true;
  }
  p = n;
  f = 1;
  return true;
}

FieldCtx::FieldCtx(int p, int f) : p_(p), f_(f) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
    throw std::invalid_argument("FieldCtx: p must be prime");
  if (f < 1) throw std::invalid_argument("FieldCtx: f must be >= 1");
  std::uint64_t q = 1;
  for (int i = 0; i < f; ++i) {
    q *= static_cast<std::uint64_t>(p);
    if (q > kMaxQ) throw std::invalid_argument("FieldCtx: q > 2^16 unsupported");
  }
  if (q < 4) throw std::invalid_argument("FieldCtx: q must be >= 4");
  q_ = static_cast<std::uint32_t>(q);

  // Minimal-modulus scan: candidate tuples in increasing packed order.
  for (std::uint32_t c = 0; c < q_; ++c) {
    Poly g(f_ + 1, 0);
    std::uint32_t t = c;
    for (int i = 0; i < f_; ++i) {
      g[i] = static_cast<int>(t % static_cast<std::uint32_t>(p_));
      t /= static_cast<std::uint32_t>(p_);
    }
    g[f_] = 1;
    if (poly_irreducible(g, p_, f_)) {
      modulus_ = g;
      break;
    }
  }
  if (modulus_.empty()) throw std::logic_error("FieldCtx: no irreducible modulus found");

  if (q_ <= kTableLimit) build_tables();
}

std::string FieldCtx::modulus_str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = f_; i >= 0; --i) {
    int c = modulus_[i];
    if (c == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

FieldElem FieldCtx::elem(std::uint32_t index) const {
  if (index >= q_) throw std::out_of_range("FieldCtx::elem: index out of range");
  return {index};
}

FieldElem FieldCtx::from_int(long long n) const {
  long long r = n % p_;
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r)};
}

FieldElem FieldCtx::from_coeffs(const std::vector<int>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != f_)
    throw std::invalid_argument("FieldCtx::from_coeffs: need exactly f coefficients");
  std::uint32_t v = 0;
  for (int i = f_ - 1; i >= 0; --i) {
    if (coeffs[i] < 0 || coeffs[i] >= p_)
      throw std::invalid_argument("FieldCtx::from_coeffs: coefficient out of [0,p)");
    v = v * static_cast<std::uint32_t>(p_) + static_cast<std::uint32_t>(coeffs[i]);
  }
  return {v};
}

std::vector<int> FieldCtx::coeffs(FieldElem x) const {
  std::vector<int> c(f_);
  std::uint32_t t = x.v;
  for (int i = 0; i < f_; ++i) {
    c[i] = static_cast<int>(t % static_cast<std::uint32_t>(p_));
    t /= static_cast<std::uint32_t>(p_);
  }
  return c;
}

std::string FieldCtx::to_string(FieldElem x) const {
  if (f_ == 1) return std::to_string(x.v);
  std::ostringstream os;
  os << "[";
  auto c = coeffs(x);
  for (int i = 0; i < f_; ++i) {
    if (i) os << ",";
    os << c[i];
  }
  os << "]";
  return os.str();
}

FieldElem FieldCtx::add(FieldElem a, FieldElem b) const {
  if (p_ == 2) return {a.v ^ b.v};
  if (f_ == 1) {
    std::uint32_t s = a.v + b.v;
    if (s >= q_) s -= q_;
    return {s};
  }
  std::uint32_t v = 0, pw = 1;
  std::uint32_t av = a.v, bv = b.v;
  for (int i = 0; i < f_; ++i) {
    std::uint32_t d = av % p_ + bv % p_;
    if (d >= static_cast<std::uint32_t>(p_)) d -= p_;
    v += d * pw;
    av /= p_;
    bv /= p_;
    pw *= p_;
  }
  return {v};
}

FieldElem FieldCtx::neg(FieldElem a) const {
  if (p_ == 2) return a;
  if (f_ == 1) return {a.v == 0 ? 0 : q_ - a.v};
  std::uint32_t v = 0, pw = 1;
  std::uint32_t av = a.v;
  for (int i = 0; i < f_; ++i) {
    std::uint32_t d = av % p_;
    v += (d == 0 ? 0 : p_ - d) * pw;
    av /= p_;
    pw *= p_;
  }
  return {v};
}

FieldElem FieldCtx::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem FieldCtx::mul(FieldElem a, FieldElem b) const {
  if (tables_) return {mul_table_[static_cast<std::size_t>(a.v) * q_ + b.v]};
  return mul_generic(a, b);
}

FieldElem FieldCtx::mul_generic(FieldElem a, FieldElem b) const {
  if (f_ == 1)
    return {static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v) * b.v % q_)};
  Poly pa = coeffs(a), pb = coeffs(b);
  trim(pa);
  trim(pb);
  Poly r = poly_mod(poly_mul(pa, pb, p_), modulus_, p_);
  r.resize(f_, 0);
  return from_coeffs(r);
}

FieldElem FieldCtx::inv(FieldElem a) const {
  if (a.v == 0) throw std::domain_error("FieldCtx::inv: zero has no inverse");
  if (tables_) return {inv_table_[a.v]};
  return inv_generic(a);
}

FieldElem FieldCtx::inv_generic(FieldElem a) const {
  return pow(a, static_cast<long long>(q_) - 2);
}

FieldElem FieldCtx::pow(FieldElem a, long long n) const {
  if (n < 0) {
    a = inv(a);
    n = -n;
  }
  FieldElem r = one();
  FieldElem b = a;
  std::uint64_t e = static_cast<std::uint64_t>(n);
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

FieldElem FieldCtx::frobenius(FieldElem x, int k) const {
  int kk = k % f_;
  if (kk < 0) kk += f_;
  if (kk == 0) return x;
  long long e = 1;
  for (int i = 0; i < kk; ++i) e *= p_;
  return pow(x, e);
}

bool FieldCtx::is_square(FieldElem x) const {
  if (p_ == 2 || x.v == 0) return true;
  if (tables_) return square_table_[x.v] != 0;
  return pow(x, (static_cast<long long>(q_) - 1) / 2) == one();
}

std::uint32_t FieldCtx::mul_order(FieldElem x) const {
  if (x.v == 0) throw std::domain_error("FieldCtx::mul_order: zero");
  FieldElem y = x;
  std::uint32_t n = 1;
  while (y != one()) {
    y = mul(y, x);
    ++n;
  }
  return n;
}

void FieldCtx::build_tables() {
  mul_table_.assign(static_cast<std::size_t>(q_) * q_, 0);
  for (std::uint32_t a = 0; a < q_; ++a)
    for (std::uint32_t b = a; b < q_; ++b) {
      std::uint32_t m = mul_generic({a}, {b}).v;
      mul_table_[static_cast<std::size_t>(a) * q_ + b] = m;
      mul_table_[static_cast<std::size_t>(b) * q_ + a] = m;
    }
  inv_table_.assign(q_, 0);
  for (std::uint32_t a = 1; a < q_; ++a)
    for (std::uint32_t b = 1; b < q_; ++b)
      if (mul_table_[static_cast<std::size_t>(a) * q_ + b] == 1) {
        inv_table_[a] = b;
        break;
      }
  square_table_.assign(q_, 0);
  for (std::uint32_t a = 0; a < q_; ++a)
    square_table_[mul_table_[static_cast<std::size_t>(a) * q_ + a]] = 1;
  tables_ = true;
}

}  // namespace grr
