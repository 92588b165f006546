#include "grrlab/bounds.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace grr {

Rational make_rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

bool rational_leq(const Rational& r, long long n) { return r.num <= n * r.den; }

bool rational_geq_int(long long n, const Rational& r) { return n * r.den >= r.num; }

double rational_to_double(const Rational& r) {
  return static_cast<double>(r.num) / static_cast<double>(r.den);
}

namespace {

long long pow_ll(int p, int f) {
  long long q = 1;
  for (int i = 0; i < f; ++i) q *= p;
  return q;
}

long long numerator_B(long long q, long long d, long long f) {
  return q * q - 4 * d * d * f * q - (d + 2) * q - 4 * d * d * f - 3 * d * d + 2 * d - 1;
}

}  // namespace

Rational bound_B(int p, int f) {
  if (f < 1) throw std::invalid_argument("bound_B: f >= 1 required");
  long long q = pow_ll(p, f);
  long long d = (q % 2 == 0) ? 1 : 2;
  return make_rational(numerator_B(q, d, f), d);
}

Sign lemma5_sign(int p, int f) {
  long long q = pow_ll(p, f);
  long long d = (q % 2 == 0) ? 1 : 2;
  long long n = numerator_B(q, d, f);
  if (n > 0) return Sign::Positive;
  if (n < 0) return Sign::Negative;
  return Sign::Zero;
}

double prob_lower(long long q) {
  if (q < 2) throw std::invalid_argument("prob_lower: q >= 2 required");
  double lg = std::log2(static_cast<double>(q));
  double qq = static_cast<double>(q);
  double num = qq * qq - 16.0 * qq * lg - 4.0 * qq - 16.0 * lg - 9.0;
  return num / (qq * (qq + 1.0));
}

std::pair<long long, long long> involution_bounds(long long q) {
  if (q < 5) throw std::invalid_argument("involution_bounds: q >= 5 required");
  long long d = (q % 2 == 0) ? 1 : 2;
  return {q * (q - 1) / d, q * (q + 1) / d};
}

BoundRecord make_bound_record(int p, int f) {
  BoundRecord r;
  r.q = pow_ll(p, f);
  r.p = p;
  r.f = f;
  r.d = (r.q % 2 == 0) ? 1 : 2;
  r.B = bound_B(p, f);
  r.probLower = prob_lower(r.q);
  auto [lo, hi] = involution_bounds(r.q);
  r.vLower = lo;
  r.vUpper = hi;
  return r;
}

}  // namespace grr
