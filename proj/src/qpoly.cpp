#include "coxsmooth/qpoly.hpp"

#include <sstream>

#include "coxsmooth/errors.hpp"

namespace coxsmooth {

QPolynomial::QPolynomial(long constant) {
  if (constant != 0) c_.push_back(Integer(constant));
}

QPolynomial::QPolynomial(Integer constant) {
  if (constant != 0) c_.push_back(std::move(constant));
}

QPolynomial::QPolynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) {
  trim();
}

void QPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Integer& QPolynomial::coeff(std::size_t k) const {
  static const Integer zero(0);
  return k < c_.size() ? c_[k] : zero;
}

QPolynomial QPolynomial::operator+(const QPolynomial& o) const {
  QPolynomial r = *this;
  r += o;
  return r;
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

QPolynomial QPolynomial::operator-(const QPolynomial& o) const {
  QPolynomial r = *this;
  if (o.c_.size() > r.c_.size()) r.c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] -= o.c_[i];
  r.trim();
  return r;
}

QPolynomial QPolynomial::operator*(const QPolynomial& o) const {
  if (is_zero() || o.is_zero()) return QPolynomial();
  std::vector<Integer> r(c_.size() + o.c_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return QPolynomial(std::move(r));
}

QPolynomial& QPolynomial::operator*=(const QPolynomial& o) {
  *this = *this * o;
  return *this;
}

QPolynomial QPolynomial::shifted(std::size_t k) const {
  if (is_zero()) return QPolynomial();
  std::vector<Integer> r(c_.size() + k, Integer(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
  return QPolynomial(std::move(r));
}

Integer QPolynomial::evaluate_at_one() const {
  Integer s(0);
  for (const auto& a : c_) s += a;
  return s;
}

std::string QPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    Integer a = c_[k];
    if (first) {
      if (a < 0) os << "-", a = -a;
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    if (k == 0 || a != 1) os << a.get_str();
    if (k >= 1) {
      os << "q";
      if (k >= 2) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

QPolynomial q_integer(long k) {
  if (k <= 0) return QPolynomial();
  return QPolynomial(std::vector<Integer>(static_cast<std::size_t>(k), Integer(1)));
}

std::optional<long> palindromic_defect(const QPolynomial& p) {
  if (p.is_zero())
    throw UserError("palindromic_defect: the zero polynomial has no defect");
  const long d = p.degree();
  for (long i = 0; 2 * i <= d; ++i)
    if (p.coeff(static_cast<std::size_t>(i)) !=
        p.coeff(static_cast<std::size_t>(d - i)))
      return i;
  return std::nullopt;
}

bool is_k_palindromic(const QPolynomial& p, long k) {
  auto d = palindromic_defect(p);
  return !d.has_value() || *d >= k;
}

}  // namespace coxsmooth
