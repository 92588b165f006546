#pragma once

#include <cstdint>
#include <utility>

namespace grr {

/// Exact rational, normalized with positive denominator and reduced.
struct Rational {
  long long num = 0;
  long long den = 1;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

Rational make_rational(long long num, long long den);

// a/b vs c (integers), exact comparisons.
bool rational_leq(const Rational& r, long long n);   // r <= n
bool rational_geq_int(long long n, const Rational& r);  // n >= r
double rational_to_double(const Rational& r);

enum class Sign { Negative, Zero, Positive };

// (q^2 - 4d^2fq - (d+2)q - 4d^2f - 3d^2 + 2d - 1) / d with q = p^f,
// d = gcd(2, q-1). Exact.
Rational bound_B(int p, int f);

// Sign of the numerator above; positive exactly when q = 23 or q >= 29
// over the prime powers (checked exhaustively in tests up to 4096).
Sign lemma5_sign(int p, int f);

// (q^2 - 16q log2(q) - 4q - 16 log2(q) - 9) / (q(q+1)) in double precision.
double prob_lower(long long q);

// (q(q-1)/d, q(q+1)/d): lower/upper bounds for the involution count.
std::pair<long long, long long> involution_bounds(long long q);

/// All closed-form bound values for one q = p^f.
struct BoundRecord {
  long long q = 0;
  int p = 0, f = 0, d = 0;
  Rational B;
  double probLower = 0.0;
  long long vLower = 0, vUpper = 0;
};

BoundRecord make_bound_record(int p, int f);

}  // namespace grr
