#include "grrlab/quadext.hpp"

#include <sstream>
#include <stdexcept>

namespace grr {

QuadExtCtx::QuadExtCtx(FieldCtx base) : base_(std::move(base)) {
  const auto& F = base_;
  if (F.p() == 2) {
    kind_ = QuadKind::Even;
    // Absolute trace over GF(2): Tr(x) = sum x^(2^i), i < f.
    auto trace = [&](FieldElem x) {
      FieldElem t = F.zero();
      FieldElem y = x;
      for (int i = 0; i < F.f(); ++i) {
        t = F.add(t, y);
        y = F.mul(y, y);
      }
      return t;
    };
    for (std::uint32_t i = 0; i < F.q(); ++i) {
      if (trace({i}) == F.one()) {
        s_ = {i};
        return;
      }
    }
    throw std::logic_error("QuadExtCtx: no trace-1 element found");
  }
  kind_ = QuadKind::Odd;
  for (std::uint32_t i = 0; i < F.q(); ++i) {
    if (!F.is_square({i})) {
      s_ = {i};
      return;
    }
  }
  throw std::logic_error("QuadExtCtx: no nonsquare found");
}

QuadElem QuadExtCtx::elem(std::uint64_t index) const {
  if (index >= q2()) throw std::out_of_range("QuadExtCtx::elem: index out of range");
  return {{static_cast<std::uint32_t>(index % q())},
          {static_cast<std::uint32_t>(index / q())}};
}

QuadElem QuadExtCtx::add(QuadElem a, QuadElem b) const {
  return {base_.add(a.u, b.u), base_.add(a.v, b.v)};
}

QuadElem QuadExtCtx::sub(QuadElem a, QuadElem b) const {
  return {base_.sub(a.u, b.u), base_.sub(a.v, b.v)};
}

QuadElem QuadExtCtx::neg(QuadElem a) const { return {base_.neg(a.u), base_.neg(a.v)}; }

QuadElem QuadExtCtx::mul(QuadElem a, QuadElem b) const {
  const auto& F = base_;
  FieldElem uu = F.mul(a.u, b.u);
  FieldElem vv = F.mul(a.v, b.v);
  FieldElem cross = F.add(F.mul(a.u, b.v), F.mul(a.v, b.u));
  if (kind_ == QuadKind::Odd) {
    // t^2 = s
    return {F.add(uu, F.mul(s_, vv)), cross};
  }
  // t^2 = t + s
  return {F.add(uu, F.mul(s_, vv)), F.add(cross, vv)};
}

QuadElem QuadExtCtx::conj(QuadElem a) const {
  if (kind_ == QuadKind::Odd) return {a.u, base_.neg(a.v)};
  return {base_.add(a.u, a.v), a.v};
}

FieldElem QuadExtCtx::norm(QuadElem a) const {
  const auto& F = base_;
  if (kind_ == QuadKind::Odd)
    return F.sub(F.mul(a.u, a.u), F.mul(s_, F.mul(a.v, a.v)));
  return F.add(F.add(F.mul(a.u, a.u), F.mul(a.u, a.v)), F.mul(s_, F.mul(a.v, a.v)));
}

QuadElem QuadExtCtx::inv(QuadElem a) const {
  if (a == zero()) throw std::domain_error("QuadExtCtx::inv: zero has no inverse");
  FieldElem n_inv = base_.inv(norm(a));
  QuadElem c = conj(a);
  return {base_.mul(c.u, n_inv), base_.mul(c.v, n_inv)};
}

QuadElem QuadExtCtx::pow(QuadElem a, long long n) const {
  if (n < 0) {
    a = inv(a);
    n = -n;
  }
  QuadElem r = one();
  QuadElem b = a;
  std::uint64_t e = static_cast<std::uint64_t>(n);
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

QuadElem QuadExtCtx::order4_elem() const {
  if (base_.p() == 2) throw std::domain_error("QuadExtCtx::order4_elem: q must be odd");
  QuadElem minus_one = neg(one());
  for (std::uint64_t i = 0; i < q2(); ++i) {
    QuadElem x = elem(i);
    if (mul(x, x) == minus_one) return x;
  }
  throw std::logic_error("QuadExtCtx: no order-4 element (q^2 = 1 mod 4 always holds)");
}

std::string QuadExtCtx::to_string(QuadElem a) const {
  std::ostringstream os;
  os << base_.to_string(a.u) << "+" << base_.to_string(a.v) << "t";
  return os.str();
}

}  // namespace grr
