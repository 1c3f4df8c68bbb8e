#ifndef COXSMOOTH_CYCLOTOMIC_HPP
#define COXSMOOTH_CYCLOTOMIC_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "coxsmooth/numeric.hpp"

namespace coxsmooth {

// The real cyclotomic field Q(theta), theta = 2cos(pi/N).  All geometric
// data of a Coxeter system lives here, so every comparison is exact.
//
// The minimal polynomial is obtained from the cyclotomic polynomial
// Phi_{2N}(z) by exact division of z^{2N}-1 and folding the palindrome
// through y = z + 1/z; theta is its largest real root, bracketed by an
// isolating interval with exactly verified endpoint signs.
struct FieldContext {
  long conductor = 1;  // N
  int degree = 1;      // [Q(theta) : Q]
  // Monic, ascending, length degree+1; integer entries in practice.
  std::vector<Rational> minimal_polynomial;
  // Open interval containing theta and no other root of the minimal
  // polynomial; p(lo) < 0 < p(hi) verified exactly (degree >= 2 only).
  Rational iso_lo, iso_hi;
  // theta^(degree+i), i in [0, degree-2], reduced to the power basis.
  std::vector<std::vector<Rational>> power_table;

  bool rational() const { return degree == 1; }
  // Valid when degree == 1: theta itself (-minimal_polynomial[0]).
  Rational rational_theta() const { return -minimal_polynomial[0]; }
};

// Build the field for a set of finite bond labels (each >= 2).  N is their
// lcm (N = 1 when the set is empty).
std::shared_ptr<const FieldContext> build_field(const std::set<long>& bond_labels);

// Low-level arithmetic on raw coefficient vectors (length ctx.degree, power
// basis 1, theta, ..., theta^{d-1}).  The hot paths (root actions, matrix
// updates) use these to avoid per-value smart-pointer baggage.
namespace fieldops {

using Coeffs = std::vector<Rational>;

Coeffs zero(const FieldContext& ctx);
Coeffs from_rational(const FieldContext& ctx, const Rational& r);
bool is_zero(const Coeffs& a);
void add_in_place(Coeffs& a, const Coeffs& b);
void sub_in_place(Coeffs& a, const Coeffs& b);
void negate_in_place(Coeffs& a);
// a -= scale * b, where scale is a plain rational.
void sub_scaled_in_place(Coeffs& a, const Coeffs& b, const Rational& scale);
// dst = a * b in the field (reduce via the power table).
Coeffs mul(const FieldContext& ctx, const Coeffs& a, const Coeffs& b);
// a -= s * b where s is a general field element.
void sub_mul_in_place(const FieldContext& ctx, Coeffs& a, const Coeffs& s,
                      const Coeffs& b);
// Exact sign (-1, 0, +1) via interval evaluation with adaptive bisection of
// the isolating interval; rational fields short-circuit.
int sign(const FieldContext& ctx, const Coeffs& a);
std::size_t hash(const Coeffs& a);

// Span variants over raw blocks of length ctx.degree, for flat storage.
bool is_zero_span(int d, const Rational* a);
// acc += r * b
void add_scaled_span(int d, Rational* acc, const Rational* b, const Rational& r);
// acc += a * b (full field product)
void acc_mul_span(const FieldContext& ctx, Rational* acc, const Rational* a,
                  const Rational* b);
// dst -= a * b
void sub_mul_span(const FieldContext& ctx, Rational* dst, const Rational* a,
                  const Rational* b);
// a -= b
void sub_span(int d, Rational* a, const Rational* b);
int sign_span(const FieldContext& ctx, const Rational* a);

}  // namespace fieldops

// Value type over a FieldContext.  Exact equality, unique zero.
class CyclotomicReal {
 public:
  CyclotomicReal() = default;
  CyclotomicReal(std::shared_ptr<const FieldContext> ctx, fieldops::Coeffs c)
      : ctx_(std::move(ctx)), c_(std::move(c)) {}

  static CyclotomicReal from_rational(std::shared_ptr<const FieldContext> ctx,
                                      const Rational& r);
  static CyclotomicReal theta(std::shared_ptr<const FieldContext> ctx);

  const std::shared_ptr<const FieldContext>& context() const { return ctx_; }
  const fieldops::Coeffs& coefficients() const { return c_; }

  bool is_zero() const { return fieldops::is_zero(c_); }
  int sign() const { return fieldops::sign(*ctx_, c_); }

  CyclotomicReal operator+(const CyclotomicReal& o) const;
  CyclotomicReal operator-(const CyclotomicReal& o) const;
  CyclotomicReal operator-() const;
  CyclotomicReal operator*(const CyclotomicReal& o) const;
  // Multiplicative inverse via the extended Euclidean algorithm in Q[x]
  // modulo the (irreducible) minimal polynomial.  Zero is rejected.
  CyclotomicReal inverse() const;
  CyclotomicReal operator/(const CyclotomicReal& o) const;
  bool operator==(const CyclotomicReal& o) const;
  bool operator!=(const CyclotomicReal& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  std::shared_ptr<const FieldContext> ctx_;
  fieldops::Coeffs c_;
};

// 2cos(k*pi/N) as a field element, via the Chebyshev-style recurrence
// p_0 = 2, p_1 = theta, p_k = theta p_{k-1} - p_{k-2} (k reduced mod 2N
// and reflected, since 2cos is even and 2pi-periodic in k*pi/N).
CyclotomicReal two_cos(std::shared_ptr<const FieldContext> ctx, long k);

// Exact evaluation of a rational-coefficient polynomial at a rational point.
Rational evaluate_poly(const std::vector<Rational>& poly, const Rational& x);

}  // namespace coxsmooth

#endif
