#include "coxsmooth/cyclotomic.hpp"

#include <mpfr.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "coxsmooth/errors.hpp"

namespace coxsmooth {

namespace {

// ---- integer polynomial helpers (ascending coefficients) ----

using ZPoly = std::vector<Integer>;

// Exact division, asserting zero remainder (divisor monic up to sign is not
// required; used only where divisibility is guaranteed).
ZPoly divide_exact(const ZPoly& num, const ZPoly& den) {
  ZPoly r = num;
  const std::size_t dn = den.size() - 1;
  if (r.size() < den.size()) throw InternalError("divide_exact: degree underflow");
  ZPoly q(r.size() - dn, Integer(0));
  for (std::size_t k = r.size(); k-- > dn;) {
    if (r[k] == 0) continue;
    if (!mpz_divisible_p(r[k].get_mpz_t(), den[dn].get_mpz_t()))
      throw InternalError("divide_exact: inexact leading division");
    Integer c = r[k] / den[dn];
    q[k - dn] = c;
    for (std::size_t i = 0; i <= dn; ++i) r[k - dn + i] -= c * den[i];
  }
  for (const auto& a : r)
    if (a != 0) throw InternalError("divide_exact: nonzero remainder");
  return q;
}

// Phi_n(z) by the classical sieve: z^n - 1 divided by Phi_d for d | n, d < n.
ZPoly cyclotomic_polynomial(long n) {
  std::vector<ZPoly> memo(static_cast<std::size_t>(n) + 1);
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    ZPoly p(static_cast<std::size_t>(d) + 1, Integer(0));
    p[0] = -1;
    p[static_cast<std::size_t>(d)] = 1;  // z^d - 1
    for (long e = 1; e < d; ++e)
      if (d % e == 0) p = divide_exact(p, memo[static_cast<std::size_t>(e)]);
    memo[static_cast<std::size_t>(d)] = std::move(p);
  }
  return memo[static_cast<std::size_t>(n)];
}

// Fold a palindromic polynomial P(z) of even degree 2d into q(y) of degree d
// with P(z) = z^d q(z + 1/z).  Uses the basis y_j(z) = z^{d-j} (z^2+1)^j.
ZPoly fold_palindrome(const ZPoly& p) {
  const std::size_t deg = p.size() - 1;
  if (deg % 2 != 0) throw InternalError("fold_palindrome: odd degree");
  const std::size_t d = deg / 2;
  // Precompute y_j as integer polynomials.
  std::vector<ZPoly> basis(d + 1);
  ZPoly zsq_plus1 = {Integer(1), Integer(0), Integer(1)};
  ZPoly pow = {Integer(1)};
  for (std::size_t j = 0; j <= d; ++j) {
    ZPoly yj(d - j, Integer(0));
    yj.insert(yj.end(), pow.begin(), pow.end());
    basis[j] = std::move(yj);
    if (j < d) {
      ZPoly next(pow.size() + 2, Integer(0));
      for (std::size_t i = 0; i < pow.size(); ++i) {
        next[i] += pow[i];
        next[i + 2] += pow[i];
      }
      pow = std::move(next);
    }
  }
  ZPoly rem = p;
  ZPoly q(d + 1, Integer(0));
  for (std::size_t j = d + 1; j-- > 0;) {
    Integer c = (d + j < rem.size()) ? rem[d + j] : Integer(0);
    q[j] = c;
    if (c != 0)
      for (std::size_t i = 0; i < basis[j].size(); ++i) rem[i] -= c * basis[j][i];
  }
  for (const auto& a : rem)
    if (a != 0) throw InternalError("fold_palindrome: nonzero residue");
  return q;
}

Rational eval_zpoly(const ZPoly& p, const Rational& x) {
  Rational v(0);
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + Rational(p[i]);
  return v;
}

// Exact conversion of an MPFR value to a rational.
Rational mpfr_to_rational(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return Rational(0);
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rational r(m);
  if (e >= 0) {
    mpz_class p2;
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(e));
    r *= Rational(p2);
  } else {
    mpz_class p2;
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(-e));
    r /= Rational(p2);
  }
  return r;
}

// Certified enclosure of 2cos(k*pi/N) for 0 < k < N, by directed rounding.
// cos is decreasing on [0, pi], so lower/upper argument bounds swap roles.
std::pair<Rational, Rational> certified_two_cos(long k, long N, mpfr_prec_t prec) {
  mpfr_t pi_d, pi_u, arg_d, arg_u, c_lo, c_hi;
  mpfr_inits2(prec, pi_d, pi_u, arg_d, arg_u, c_lo, c_hi, (mpfr_ptr) nullptr);
  mpfr_const_pi(pi_d, MPFR_RNDD);
  mpfr_const_pi(pi_u, MPFR_RNDU);
  mpfr_mul_si(arg_d, pi_d, k, MPFR_RNDD);
  mpfr_div_si(arg_d, arg_d, N, MPFR_RNDD);
  mpfr_mul_si(arg_u, pi_u, k, MPFR_RNDU);
  mpfr_div_si(arg_u, arg_u, N, MPFR_RNDU);
  if (mpfr_cmp(arg_u, pi_d) >= 0)
    throw InternalError("certified_two_cos: argument bound reached pi");
  mpfr_cos(c_hi, arg_d, MPFR_RNDU);   // cos(arg_d) >= cos(arg)
  mpfr_cos(c_lo, arg_u, MPFR_RNDD);   // cos(arg_u) <= cos(arg)
  mpfr_mul_ui(c_hi, c_hi, 2, MPFR_RNDU);
  mpfr_mul_ui(c_lo, c_lo, 2, MPFR_RNDD);
  Rational lo = mpfr_to_rational(c_lo), hi = mpfr_to_rational(c_hi);
  mpfr_clears(pi_d, pi_u, arg_d, arg_u, c_lo, c_hi, (mpfr_ptr) nullptr);
  return {lo, hi};
}

}  // namespace

Rational evaluate_poly(const std::vector<Rational>& poly, const Rational& x) {
  Rational v(0);
  for (std::size_t i = poly.size(); i-- > 0;) v = v * x + poly[i];
  return v;
}

std::shared_ptr<const FieldContext> build_field(const std::set<long>& bond_labels) {
  for (long m : bond_labels)
    if (m < 2) throw UserError("build_field: bond labels must be >= 2");
  long N = 1;
  for (long m : bond_labels) N = std::lcm(N, m);

  auto ctx = std::make_shared<FieldContext>();
  ctx->conductor = N;

  if (N == 1) {  // theta = 2cos(pi) = -2
    ctx->degree = 1;
    ctx->minimal_polynomial = {Rational(2), Rational(1)};  // x + 2
    ctx->iso_lo = Rational(-3);
    ctx->iso_hi = Rational(-1);
    return ctx;
  }

  ZPoly phi = cyclotomic_polynomial(2 * N);
  ZPoly mp = fold_palindrome(phi);
  const int d = static_cast<int>(mp.size()) - 1;
  ctx->degree = d;
  ctx->minimal_polynomial.reserve(mp.size());
  for (const auto& a : mp) ctx->minimal_polynomial.emplace_back(a);

  if (d == 1) {
    // theta rational (N = 2 or 3): trivial interval around -mp[0].
    Rational t = -Rational(mp[0]);
    ctx->iso_lo = t - 1;
    ctx->iso_hi = t + 1;
  } else {
    // Bracket theta = 2cos(pi/N) away from the next root 2cos(k*pi/N),
    // k = least integer > 1 coprime to 2N, with certified enclosures.
    long k = 2;
    while (std::gcd(k, 2 * N) != 1) ++k;
    for (mpfr_prec_t prec = 128;; prec *= 2) {
      if (prec > 1 << 20) throw InternalError("build_field: precision runaway");
      auto [t1_lo, t1_hi] = certified_two_cos(1, N, prec);
      auto [t2_lo, t2_hi] = certified_two_cos(k, N, prec);
      if (t2_hi < t1_lo) {
        ctx->iso_lo = (t2_hi + t1_lo) / 2;
        ctx->iso_hi = t1_hi + 1;
        break;
      }
    }
    // Exact endpoint verification: exactly one sign change across theta.
    if (eval_zpoly(mp, ctx->iso_lo) >= 0 || eval_zpoly(mp, ctx->iso_hi) <= 0)
      throw InternalError("build_field: isolating interval failed sign check");
  }

  // power_table[i] = theta^(d+i) in the power basis.
  if (d >= 2) {
    std::vector<Rational> cur(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) cur[static_cast<std::size_t>(i)] = -ctx->minimal_polynomial[static_cast<std::size_t>(i)];
    ctx->power_table.push_back(cur);
    for (int s = 1; s <= d - 2; ++s) {
      // Multiply by theta: shift, then reduce the overflow via theta^d.
      Rational top = cur.back();
      for (std::size_t i = cur.size(); i-- > 1;) cur[i] = cur[i - 1];
      cur[0] = 0;
      if (top != 0)
        for (int i = 0; i < d; ++i)
          cur[static_cast<std::size_t>(i)] += top * ctx->power_table[0][static_cast<std::size_t>(i)];
      ctx->power_table.push_back(cur);
    }
  }
  return ctx;
}

namespace fieldops {

Coeffs zero(const FieldContext& ctx) {
  return Coeffs(static_cast<std::size_t>(ctx.degree));
}

Coeffs from_rational(const FieldContext& ctx, const Rational& r) {
  Coeffs c = zero(ctx);
  c[0] = r;
  return c;
}

bool is_zero(const Coeffs& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

void add_in_place(Coeffs& a, const Coeffs& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

void sub_in_place(Coeffs& a, const Coeffs& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
}

void negate_in_place(Coeffs& a) {
  for (auto& x : a) x = -x;
}

void sub_scaled_in_place(Coeffs& a, const Coeffs& b, const Rational& scale) {
  if (scale == 0) return;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] != 0) a[i] -= scale * b[i];
}

Coeffs mul(const FieldContext& ctx, const Coeffs& a, const Coeffs& b) {
  const std::size_t d = a.size();
  if (d == 1) return {a[0] * b[0]};
  std::vector<Rational> full(2 * d - 1);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j)
      if (b[j] != 0) full[i + j] += a[i] * b[j];
  }
  Coeffs r(full.begin(), full.begin() + static_cast<long>(d));
  for (std::size_t k = d; k < 2 * d - 1; ++k) {
    if (full[k] == 0) continue;
    const auto& pow = ctx.power_table[k - d];
    for (std::size_t i = 0; i < d; ++i)
      if (pow[i] != 0) r[i] += full[k] * pow[i];
  }
  return r;
}

void sub_mul_in_place(const FieldContext& ctx, Coeffs& a, const Coeffs& s,
                      const Coeffs& b) {
  Coeffs p = mul(ctx, s, b);
  sub_in_place(a, p);
}

namespace {

struct QInterval {
  Rational lo, hi;
};

QInterval iv_mul(const QInterval& a, const QInterval& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min(std::min(p1, p2), std::min(p3, p4)),
          std::max(std::max(p1, p2), std::max(p3, p4))};
}

// Evaluate the coefficient polynomial over [lo, hi] by interval Horner.
QInterval iv_eval(const Coeffs& a, const Rational& lo, const Rational& hi) {
  QInterval v{a.back(), a.back()};
  const QInterval x{lo, hi};
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    v = iv_mul(v, x);
    v.lo += a[i];
    v.hi += a[i];
  }
  return v;
}

}  // namespace

int sign(const FieldContext& ctx, const Coeffs& a) {
  if (is_zero(a)) return 0;
  if (ctx.degree == 1) {
    // Value is a[0] + (theta-free tail); basis is {1}, so just a[0]...
    // except theta itself was already reduced into the constant.
    return sgn(a[0]);
  }
  Rational lo = ctx.iso_lo, hi = ctx.iso_hi;
  for (;;) {
    QInterval v = iv_eval(a, lo, hi);
    if (v.lo > 0) return 1;
    if (v.hi < 0) return -1;
    // Bisect the root bracket: the minimal polynomial has no rational root
    // (irreducible, degree >= 2), so the midpoint sign is well-defined.
    Rational mid = (lo + hi) / 2;
    if (evaluate_poly(ctx.minimal_polynomial, mid) < 0)
      lo = mid;
    else
      hi = mid;
  }
}

std::size_t hash(const Coeffs& a) {
  std::size_t h = 0x8f1bbcdc;
  for (const auto& x : a) hash_combine(h, hash_rational(x));
  return h;
}

bool is_zero_span(int d, const Rational* a) {
  for (int i = 0; i < d; ++i)
    if (a[i] != 0) return false;
  return true;
}

void add_scaled_span(int d, Rational* acc, const Rational* b, const Rational& r) {
  if (r == 0) return;
  for (int i = 0; i < d; ++i)
    if (b[i] != 0) acc[i] += r * b[i];
}

void acc_mul_span(const FieldContext& ctx, Rational* acc, const Rational* a,
                  const Rational* b) {
  const int d = ctx.degree;
  if (d == 1) {
    acc[0] += a[0] * b[0];
    return;
  }
  std::vector<Rational> full(static_cast<std::size_t>(2 * d - 1));
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d; ++j)
      if (b[j] != 0) full[static_cast<std::size_t>(i + j)] += a[i] * b[j];
  }
  for (int i = 0; i < d; ++i) acc[i] += full[static_cast<std::size_t>(i)];
  for (int k = d; k < 2 * d - 1; ++k) {
    const Rational& top = full[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    const auto& pow = ctx.power_table[static_cast<std::size_t>(k - d)];
    for (int i = 0; i < d; ++i)
      if (pow[static_cast<std::size_t>(i)] != 0)
        acc[i] += top * pow[static_cast<std::size_t>(i)];
  }
}

void sub_mul_span(const FieldContext& ctx, Rational* dst, const Rational* a,
                  const Rational* b) {
  const int d = ctx.degree;
  if (d == 1) {
    dst[0] -= a[0] * b[0];
    return;
  }
  std::vector<Rational> tmp(static_cast<std::size_t>(d));
  acc_mul_span(ctx, tmp.data(), a, b);
  for (int i = 0; i < d; ++i)
    if (tmp[static_cast<std::size_t>(i)] != 0) dst[i] -= tmp[static_cast<std::size_t>(i)];
}

void sub_span(int d, Rational* a, const Rational* b) {
  for (int i = 0; i < d; ++i)
    if (b[i] != 0) a[i] -= b[i];
}

int sign_span(const FieldContext& ctx, const Rational* a) {
  const int d = ctx.degree;
  if (d == 1) return sgn(a[0]);
  // Rational values are common in practice; skip the interval machinery.
  bool tail_zero = true;
  for (int i = 1; i < d; ++i)
    if (a[i] != 0) {
      tail_zero = false;
      break;
    }
  if (tail_zero) return sgn(a[0]);
  Coeffs tmp(a, a + d);
  return sign(ctx, tmp);
}

}  // namespace fieldops

CyclotomicReal CyclotomicReal::from_rational(std::shared_ptr<const FieldContext> ctx,
                                             const Rational& r) {
  auto c = fieldops::from_rational(*ctx, r);
  return CyclotomicReal(std::move(ctx), std::move(c));
}

CyclotomicReal CyclotomicReal::theta(std::shared_ptr<const FieldContext> ctx) {
  fieldops::Coeffs c = fieldops::zero(*ctx);
  if (ctx->degree == 1)
    c[0] = ctx->rational_theta();
  else
    c[1] = 1;
  return CyclotomicReal(std::move(ctx), std::move(c));
}

namespace {
void check_same_context(const CyclotomicReal& a, const CyclotomicReal& b) {
  if (a.context().get() != b.context().get())
    throw UserError("CyclotomicReal: mixed field contexts");
}
}  // namespace

CyclotomicReal CyclotomicReal::operator+(const CyclotomicReal& o) const {
  check_same_context(*this, o);
  fieldops::Coeffs c = c_;
  fieldops::add_in_place(c, o.c_);
  return CyclotomicReal(ctx_, std::move(c));
}

CyclotomicReal CyclotomicReal::operator-(const CyclotomicReal& o) const {
  check_same_context(*this, o);
  fieldops::Coeffs c = c_;
  fieldops::sub_in_place(c, o.c_);
  return CyclotomicReal(ctx_, std::move(c));
}

CyclotomicReal CyclotomicReal::operator-() const {
  fieldops::Coeffs c = c_;
  fieldops::negate_in_place(c);
  return CyclotomicReal(ctx_, std::move(c));
}

CyclotomicReal CyclotomicReal::operator*(const CyclotomicReal& o) const {
  check_same_context(*this, o);
  return CyclotomicReal(ctx_, fieldops::mul(*ctx_, c_, o.c_));
}

CyclotomicReal CyclotomicReal::inverse() const {
  if (is_zero()) throw UserError("CyclotomicReal: inverse of zero");
  const std::size_t d = c_.size();
  if (d == 1) return CyclotomicReal(ctx_, {Rational(1) / c_[0]});

  // Extended Euclid in Q[x]: track t with t * a = r (mod minpoly).
  using P = std::vector<Rational>;
  auto deg = [](const P& p) {
    for (std::size_t i = p.size(); i-- > 0;)
      if (p[i] != 0) return static_cast<long>(i);
    return -1L;
  };
  P r0 = ctx_->minimal_polynomial, r1(c_.begin(), c_.end());
  P t0 = {Rational(0)}, t1 = {Rational(1)};
  while (deg(r1) > 0) {
    // Divide r0 by r1.
    P q(static_cast<std::size_t>(deg(r0) - deg(r1)) + 1, Rational(0));
    P rem = r0;
    long dr1 = deg(r1);
    Rational lead = r1[static_cast<std::size_t>(dr1)];
    for (long k = deg(rem); k >= dr1; --k) {
      Rational c = rem[static_cast<std::size_t>(k)] / lead;
      if (c == 0) continue;
      q[static_cast<std::size_t>(k - dr1)] = c;
      for (long i = 0; i <= dr1; ++i)
        rem[static_cast<std::size_t>(k - dr1 + i)] -= c * r1[static_cast<std::size_t>(i)];
    }
    // (r0, r1) <- (r1, rem); (t0, t1) <- (t1, t0 - q*t1)
    P qt(q.size() + t1.size() - 1, Rational(0));
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < t1.size(); ++j) qt[i + j] += q[i] * t1[j];
    P tn(std::max(t0.size(), qt.size()), Rational(0));
    for (std::size_t i = 0; i < t0.size(); ++i) tn[i] += t0[i];
    for (std::size_t i = 0; i < qt.size(); ++i) tn[i] -= qt[i];
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(tn);
  }
  if (deg(r1) != 0)
    throw InternalError("CyclotomicReal: gcd with minimal polynomial not constant");
  Rational c0 = r1[0];
  fieldops::Coeffs inv = fieldops::zero(*ctx_);
  for (std::size_t i = 0; i < t1.size() && i < d; ++i) inv[i] = t1[i] / c0;
  return CyclotomicReal(ctx_, std::move(inv));
}

CyclotomicReal CyclotomicReal::operator/(const CyclotomicReal& o) const {
  return *this * o.inverse();
}

bool CyclotomicReal::operator==(const CyclotomicReal& o) const {
  check_same_context(*this, o);
  return c_ == o.c_;
}

std::string CyclotomicReal::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    os << c_[i].get_str();
    if (i == 1) os << "*th";
    if (i > 1) os << "*th^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

CyclotomicReal two_cos(std::shared_ptr<const FieldContext> ctx, long k) {
  const long period = 2 * ctx->conductor;
  k = ((k % period) + period) % period;
  if (k > ctx->conductor) k = period - k;
  CyclotomicReal p0 = CyclotomicReal::from_rational(ctx, Rational(2));
  if (k == 0) return p0;
  CyclotomicReal th = CyclotomicReal::theta(ctx);
  CyclotomicReal p1 = th;
  for (long i = 2; i <= k; ++i) {
    CyclotomicReal next = th * p1 - p0;
    p0 = std::move(p1);
    p1 = std::move(next);
  }
  return p1;
}

}  // namespace coxsmooth
