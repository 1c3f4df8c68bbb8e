#ifndef COXSMOOTH_SERIES_HPP
#define COXSMOOTH_SERIES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "coxsmooth/numeric.hpp"
#include "coxsmooth/qpoly.hpp"

namespace coxsmooth {

// One monomial c * q^qpow * t^tpow, for assembling numerators/denominators.
struct BivariateMonomial {
  Rational coeff;
  std::size_t qpow = 0;
  std::size_t tpow = 0;
};

// Power series in q and t over Q, truncated to the rectangle
// {q^i t^j : i < q_order, j < t_order}.  Truncated-exact: every retained
// coefficient equals the exact mathematical coefficient, because addition,
// multiplication, reciprocal and exp only ever need retained coefficients
// of their inputs to produce retained coefficients of their outputs.
class BivariateSeries {
 public:
  BivariateSeries(std::size_t q_order, std::size_t t_order);
  static BivariateSeries from_monomials(std::size_t q_order, std::size_t t_order,
                                        const std::vector<BivariateMonomial>& ms);

  std::size_t q_order() const { return q_order_; }
  std::size_t t_order() const { return t_order_; }
  const Rational& coeff(std::size_t qpow, std::size_t tpow) const;
  void set_coeff(std::size_t qpow, std::size_t tpow, const Rational& v);

  bool is_zero() const;
  BivariateSeries operator+(const BivariateSeries& o) const;
  BivariateSeries operator-(const BivariateSeries& o) const;
  BivariateSeries operator*(const BivariateSeries& o) const;
  bool operator==(const BivariateSeries& o) const;
  bool operator!=(const BivariateSeries& o) const { return !(*this == o); }

  // Multiplicative inverse; requires a nonzero rational constant term.
  BivariateSeries reciprocal() const;
  // exp of a series with zero constant term.
  BivariateSeries exp() const;

  // The t^n slice as a vector of q-coefficients (length q_order).
  std::vector<Rational> t_slice(std::size_t n) const;
  // n! * (t^n slice), asserting all entries integral; trailing zeros trimmed.
  QPolynomial t_slice_times_factorial(std::size_t n) const;

 private:
  std::size_t q_order_, t_order_;
  // c_[t][q]
  std::vector<std::vector<Rational>> c_;
};

// num/den expanded as a truncated series; den must have a nonzero rational
// constant term.  Both inputs are exact polynomials given as monomial lists.
BivariateSeries expand_rational(const std::vector<BivariateMonomial>& num,
                                const std::vector<BivariateMonomial>& den,
                                std::size_t q_order, std::size_t t_order);

}  // namespace coxsmooth

#endif
