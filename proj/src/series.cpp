#include "coxsmooth/series.hpp"

#include "coxsmooth/errors.hpp"

namespace coxsmooth {

BivariateSeries::BivariateSeries(std::size_t q_order, std::size_t t_order)
    : q_order_(q_order), t_order_(t_order),
      c_(t_order, std::vector<Rational>(q_order)) {
  if (q_order == 0 || t_order == 0)
    throw UserError("BivariateSeries: truncation orders must be positive");
}

BivariateSeries BivariateSeries::from_monomials(
    std::size_t q_order, std::size_t t_order,
    const std::vector<BivariateMonomial>& ms) {
  BivariateSeries s(q_order, t_order);
  for (const auto& m : ms)
    if (m.qpow < q_order && m.tpow < t_order)
      s.c_[m.tpow][m.qpow] += m.coeff;
  return s;
}

const Rational& BivariateSeries::coeff(std::size_t qpow, std::size_t tpow) const {
  static const Rational zero(0);
  if (qpow >= q_order_ || tpow >= t_order_) return zero;
  return c_[tpow][qpow];
}

void BivariateSeries::set_coeff(std::size_t qpow, std::size_t tpow,
                                const Rational& v) {
  if (qpow >= q_order_ || tpow >= t_order_)
    throw UserError("BivariateSeries: coefficient outside truncation box");
  c_[tpow][qpow] = v;
}

bool BivariateSeries::is_zero() const {
  for (const auto& row : c_)
    for (const auto& x : row)
      if (x != 0) return false;
  return true;
}

namespace {
void check_orders(const BivariateSeries& a, const BivariateSeries& b) {
  if (a.q_order() != b.q_order() || a.t_order() != b.t_order())
    throw UserError("BivariateSeries: mismatched truncation orders");
}
}  // namespace

BivariateSeries BivariateSeries::operator+(const BivariateSeries& o) const {
  check_orders(*this, o);
  BivariateSeries r = *this;
  for (std::size_t j = 0; j < t_order_; ++j)
    for (std::size_t i = 0; i < q_order_; ++i) r.c_[j][i] += o.c_[j][i];
  return r;
}

BivariateSeries BivariateSeries::operator-(const BivariateSeries& o) const {
  check_orders(*this, o);
  BivariateSeries r = *this;
  for (std::size_t j = 0; j < t_order_; ++j)
    for (std::size_t i = 0; i < q_order_; ++i) r.c_[j][i] -= o.c_[j][i];
  return r;
}

BivariateSeries BivariateSeries::operator*(const BivariateSeries& o) const {
  check_orders(*this, o);
  BivariateSeries r(q_order_, t_order_);
  for (std::size_t j1 = 0; j1 < t_order_; ++j1)
    for (std::size_t i1 = 0; i1 < q_order_; ++i1) {
      const Rational& a = c_[j1][i1];
      if (a == 0) continue;
      for (std::size_t j2 = 0; j1 + j2 < t_order_; ++j2)
        for (std::size_t i2 = 0; i1 + i2 < q_order_; ++i2) {
          const Rational& b = o.c_[j2][i2];
          if (b != 0) r.c_[j1 + j2][i1 + i2] += a * b;
        }
    }
  return r;
}

bool BivariateSeries::operator==(const BivariateSeries& o) const {
  check_orders(*this, o);
  return c_ == o.c_;
}

BivariateSeries BivariateSeries::reciprocal() const {
  const Rational& a0 = c_[0][0];
  if (a0 == 0)
    throw UserError("BivariateSeries: reciprocal requires nonzero constant term");
  BivariateSeries b(q_order_, t_order_);
  // Solve A*B = 1 coefficient by coefficient; any linear extension of the
  // componentwise partial order works, so iterate t outer, q inner.
  for (std::size_t j = 0; j < t_order_; ++j)
    for (std::size_t i = 0; i < q_order_; ++i) {
      Rational acc = (i == 0 && j == 0) ? Rational(1) : Rational(0);
      for (std::size_t j2 = 0; j2 <= j; ++j2)
        for (std::size_t i2 = 0; i2 <= i; ++i2) {
          if (i2 == 0 && j2 == 0) continue;
          const Rational& a = c_[j2][i2];
          if (a != 0) acc -= a * b.c_[j - j2][i - i2];
        }
      b.c_[j][i] = acc / a0;
    }
  return b;
}

BivariateSeries BivariateSeries::exp() const {
  if (c_[0][0] != 0)
    throw UserError("BivariateSeries: exp requires zero constant term");
  BivariateSeries result(q_order_, t_order_);
  result.c_[0][0] = 1;
  BivariateSeries power(q_order_, t_order_);
  power.c_[0][0] = 1;
  Rational factorial(1);
  // s^k eventually truncates to zero inside the finite box (its minimal
  // total degree grows with k), so the loop terminates.
  for (std::size_t k = 1; k <= q_order_ + t_order_; ++k) {
    power = power * (*this);
    if (power.is_zero()) break;
    factorial /= static_cast<long>(k);
    for (std::size_t j = 0; j < t_order_; ++j)
      for (std::size_t i = 0; i < q_order_; ++i)
        if (power.c_[j][i] != 0) result.c_[j][i] += factorial * power.c_[j][i];
  }
  return result;
}

std::vector<Rational> BivariateSeries::t_slice(std::size_t n) const {
  if (n >= t_order_)
    throw UserError("BivariateSeries: t power outside truncation box");
  return c_[n];
}

QPolynomial BivariateSeries::t_slice_times_factorial(std::size_t n) const {
  std::vector<Rational> row = t_slice(n);
  Integer nf = factorial(static_cast<unsigned>(n));
  std::vector<Integer> out;
  out.reserve(row.size());
  for (const auto& x : row) {
    Rational v = x * Rational(nf);
    if (v.get_den() != 1)
      throw InternalError("BivariateSeries: n! * coefficient not integral");
    out.push_back(v.get_num());
  }
  return QPolynomial(std::move(out));
}

BivariateSeries expand_rational(const std::vector<BivariateMonomial>& num,
                                const std::vector<BivariateMonomial>& den,
                                std::size_t q_order, std::size_t t_order) {
  BivariateSeries n = BivariateSeries::from_monomials(q_order, t_order, num);
  BivariateSeries d = BivariateSeries::from_monomials(q_order, t_order, den);
  return n * d.reciprocal();
}

}  // namespace coxsmooth
