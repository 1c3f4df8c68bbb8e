#ifndef COXSMOOTH_QPOLY_HPP
#define COXSMOOTH_QPOLY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coxsmooth/numeric.hpp"

namespace coxsmooth {

// Univariate polynomial in q with arbitrary-precision integer coefficients,
// stored ascending with no trailing zeros (the zero polynomial is the empty
// vector).  This canonical form makes operator== coefficient-wise equality.
class QPolynomial {
 public:
  QPolynomial() = default;
  explicit QPolynomial(long constant);
  explicit QPolynomial(Integer constant);
  // Takes ascending coefficients; trailing zeros are trimmed.
  explicit QPolynomial(std::vector<Integer> coeffs);

  static QPolynomial one() { return QPolynomial(1); }

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is -1 by convention.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Integer>& coefficients() const { return c_; }
  // Coefficient of q^k; zero outside the stored range.
  const Integer& coeff(std::size_t k) const;

  QPolynomial operator+(const QPolynomial& o) const;
  QPolynomial operator-(const QPolynomial& o) const;
  QPolynomial operator*(const QPolynomial& o) const;
  QPolynomial& operator+=(const QPolynomial& o);
  QPolynomial& operator*=(const QPolynomial& o);
  bool operator==(const QPolynomial& o) const { return c_ == o.c_; }
  bool operator!=(const QPolynomial& o) const { return c_ != o.c_; }

  // Multiply by q^k.
  QPolynomial shifted(std::size_t k) const;
  Integer evaluate_at_one() const;

  // Human-readable form, e.g. "1 + 3q + 5q^2".
  std::string to_string() const;

 private:
  void trim();
  std::vector<Integer> c_;
};

// [k]_q = 1 + q + ... + q^{k-1}; [k]_q = 0 for k <= 0.
QPolynomial q_integer(long k);

// Smallest index i with a_i != a_{deg-i}, or nullopt when the coefficient
// sequence is a palindrome.  An element is k-palindromic exactly when its
// Poincare polynomial has defect >= k (palindromic counts as infinite).
// The zero polynomial is rejected.
std::optional<long> palindromic_defect(const QPolynomial& p);

// defect >= k, with palindromic treated as infinity.
bool is_k_palindromic(const QPolynomial& p, long k);

}  // namespace coxsmooth

#endif
