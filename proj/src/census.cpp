#include "coxsmooth/census.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "coxsmooth/bruhat.hpp"
#include "coxsmooth/errors.hpp"

namespace coxsmooth {

namespace {

// ---- univariate series in t over Q (fixed truncation order) ----

using TSeries = std::vector<Rational>;  // index = t power

TSeries t_mul(const TSeries& a, const TSeries& b) {
  TSeries r(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < b.size(); ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

TSeries t_reciprocal(const TSeries& a) {
  if (a.empty() || a[0] == 0)
    throw UserError("series reciprocal requires a nonzero constant term");
  TSeries r(a.size(), Rational(0));
  r[0] = 1 / a[0];
  for (std::size_t k = 1; k < a.size(); ++k) {
    Rational acc(0);
    for (std::size_t j = 1; j <= k; ++j)
      if (j < a.size() && a[j] != 0) acc += a[j] * r[k - j];
    r[k] = -acc / a[0];
  }
  return r;
}

// ---- rational-coefficient q-polynomial helpers for the recurrences ----

using QRat = std::vector<Rational>;  // ascending q-coefficients

void q_trim(QRat& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

QRat q_add_scaled(const QRat& a, const QRat& b, long scale_b) {
  QRat r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += scale_b * b[i];
  q_trim(r);
  return r;
}

QRat q_shift(const QRat& a, int k) {
  if (a.empty()) return {};
  QRat r(a.size() + static_cast<std::size_t>(k), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i + static_cast<std::size_t>(k)] = a[i];
  return r;
}

// a * [k]_q; zero when k <= 0.
QRat q_mul_qint(const QRat& a, int k) {
  if (k <= 0 || a.empty()) return {};
  QRat r(a.size() + static_cast<std::size_t>(k) - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < k; ++j) r[i + static_cast<std::size_t>(j)] += a[i];
  }
  return r;
}

QRat q_mul_trunc(const QRat& a, const QRat& b, std::size_t order) {
  QRat r(std::min(order, a.size() + b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size() && i < r.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < r.size(); ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  q_trim(r);
  return r;
}

}  // namespace

std::vector<std::vector<GroupElement>> enumerate_by_length(
    std::shared_ptr<const CoxeterSystem> sys, int max_length,
    std::size_t cap) {
  return bfs_levels(std::move(sys), max_length, cap);
}

CensusReport palindromic_census(std::shared_ptr<const CoxeterSystem> sys,
                                int max_length, CensusMode mode,
                                bool list_elements, std::size_t cap) {
  if (!sys) throw UserError("palindromic_census: null Coxeter system");
  const auto levels = enumerate_by_length(sys, max_length, cap);

  CensusReport rep;
  rep.system_name = sys->name;
  rep.max_length = max_length;
  rep.mode = mode;
  rep.counts_by_length.assign(levels.size(), 0);

  std::size_t rejected = 0;
  for (std::size_t len = 0; len < levels.size(); ++len) {
    for (const GroupElement& g : levels[len]) {
      const bool quick = two_palindromic_quick(g);
      bool keep = false;
      if (quick) {
        // palindromicity_profile internally cross-checks the shortcut
        // against the interval defect.
        const PalindromicityProfile prof = palindromicity_profile(g, cap);
        keep = mode == CensusMode::palindromic ? prof.palindromic() : true;
      } else if (++rejected % 101 == 0) {
        // Sampled slow-path re-check of rejected elements.
        (void)palindromicity_profile(g, cap);
      }
      if (keep) {
        ++rep.counts_by_length[len];
        ++rep.total;
        if (list_elements) rep.elements.push_back(g);
      }
    }
  }
  return rep;
}

BivariateSeries phi_series(int m, std::size_t q_order, std::size_t t_order) {
  if (m == 2)
    throw UserError("phi_series: m = 2 is not covered by the closed form "
                    "(use Phi_series, which handles it directly)");
  if (m != kInfiniteBond && m < 3)
    throw UserError("phi_series: m must be >= 3 or infinite");

  std::vector<BivariateMonomial> num, den;
  if (m == kInfiniteBond) {
    // (qt - q^2 t) / (1 - q - q^2 t)
    num = {{Rational(1), 1, 1}, {Rational(-1), 2, 1}};
    den = {{Rational(1), 0, 0}, {Rational(-1), 1, 0}, {Rational(-1), 2, 1}};
  } else if (m == 3) {
    // ((2q - 2q^3) t - (3q^3 + q^5) t^2) / (2 - 2q^2 - 4q^2 t)
    num = {{Rational(2), 1, 1},
           {Rational(-2), 3, 1},
           {Rational(-3), 3, 2},
           {Rational(-1), 5, 2}};
    den = {{Rational(2), 0, 0}, {Rational(-2), 2, 0}, {Rational(-4), 2, 1}};
  } else {
    // (2qt - 3q^m t^2 - q^{m+2}[m-3]_q t^3) /
    //   (2 - 2q^2 t ([m-2]_q + q^{m-3}))
    num.push_back({Rational(2), 1, 1});
    num.push_back({Rational(-3), static_cast<std::size_t>(m), 2});
    for (int k = 0; k <= m - 4; ++k)
      num.push_back({Rational(-1), static_cast<std::size_t>(m + 2 + k), 3});
    den.push_back({Rational(2), 0, 0});
    for (int k = 0; k <= m - 3; ++k)
      den.push_back({Rational(-2), static_cast<std::size_t>(2 + k), 1});
    den.push_back({Rational(-2), static_cast<std::size_t>(m - 1), 1});
  }
  return expand_rational(num, den, q_order, t_order);
}

BivariateSeries Phi_series(int m, std::size_t q_order, std::size_t t_order) {
  if (m != kInfiniteBond && m < 2)
    throw UserError("Phi_series: m must be >= 2 or infinite");
  if (m == 2) {
    // exp(qt + t)
    return BivariateSeries::from_monomials(
               q_order, t_order, {{Rational(1), 1, 1}, {Rational(1), 0, 1}})
        .exp();
  }
  const BivariateSeries phi = phi_series(m, q_order, t_order);
  const BivariateSeries one =
      BivariateSeries::from_monomials(q_order, t_order, {{Rational(1), 0, 0}});
  const BivariateSeries et =
      BivariateSeries::from_monomials(q_order, t_order, {{Rational(1), 0, 1}})
          .exp();
  return et * (one - phi).reciprocal();
}

std::vector<RecurrencePair> recurrence_pairs(int m, int n_max,
                                             std::size_t q_order) {
  if (m < 3 || m == kInfiniteBond)
    throw UserError("recurrence_pairs: m must satisfy 3 <= m < infinity");
  if (n_max < 1) throw UserError("recurrence_pairs: n_max must be >= 1");

  std::vector<RecurrencePair> out;
  if (m == 3) {
    // geometric factor 2q^2/(1-q^2) = 2q^2 + 2q^4 + ... truncated
    QRat geom(q_order, Rational(0));
    for (std::size_t e = 2; e < q_order; e += 2) geom[e] = 2;
    q_trim(geom);
    for (int n = 1; n <= n_max; ++n) {
      RecurrencePair p;
      p.n = n;
      if (n == 1) {
        p.A = {Rational(0), Rational(1)};  // q
      } else {
        QRat b{Rational(0), Rational(0), Rational(0), Rational(1, 2)};  // q^3/2
        for (int k = 0; k < n - 2; ++k) b = q_mul_trunc(b, geom, q_order);
        p.B = std::move(b);
      }
      out.push_back(std::move(p));
    }
    return out;
  }

  for (int n = 1; n <= n_max; ++n) {
    RecurrencePair p;
    p.n = n;
    if (n == 1) {
      p.A = {Rational(0), Rational(1)};  // q
    } else if (n == 2) {
      p.A = q_shift(q_mul_qint({Rational(1)}, m - 3), 3);  // q^3 [m-3]_q
      p.B = q_shift({Rational(1, 2)}, m);                  // q^m / 2
    } else {
      const RecurrencePair& prev = out.back();
      const QRat s = q_add_scaled(prev.A, prev.B, 2);  // A_{n-1} + 2 B_{n-1}
      p.A = q_shift(q_mul_qint(s, m - 3), 2);
      p.B = q_shift(s, m - 1);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::vector<Integer>> figure3_table(int m_lo, int m_hi, int n_lo,
                                                int n_hi) {
  if (m_lo < 4 || m_hi == kInfiniteBond || m_lo > m_hi)
    throw UserError("figure3_table: need 4 <= m_lo <= m_hi < infinity");
  if (n_lo < 0 || n_lo > n_hi)
    throw UserError("figure3_table: need 0 <= n_lo <= n_hi");

  const std::size_t order = static_cast<std::size_t>(n_hi) + 1;
  TSeries et(order, Rational(0));
  {
    Integer fact(1);
    for (std::size_t k = 0; k < order; ++k) {
      if (k > 0) fact *= static_cast<long>(k);
      et[k] = Rational(1) / Rational(fact);
    }
  }

  std::vector<std::vector<Integer>> table;
  for (int m = m_lo; m <= m_hi; ++m) {
    // q = 1 specialization: phi = (2t - 3t^2 - (m-3)t^3) / (2 - 2(m-1)t)
    TSeries num(order, Rational(0));
    if (order > 1) num[1] = 2;
    if (order > 2) num[2] = -3;
    if (order > 3) num[3] = -(m - 3);
    TSeries den(order, Rational(0));
    den[0] = 2;
    if (order > 1) den[1] = -2 * (m - 1);

    const TSeries phi = t_mul(num, t_reciprocal(den));
    TSeries one_minus(order, Rational(0));
    one_minus[0] = 1;
    for (std::size_t k = 0; k < order; ++k) one_minus[k] -= phi[k];
    const TSeries Phi = t_mul(et, t_reciprocal(one_minus));

    std::vector<Integer> row;
    Integer fact(1);
    for (int n = 0; n <= n_hi; ++n) {
      if (n > 0) fact *= n;
      if (n < n_lo) continue;
      const Rational entry = Phi[static_cast<std::size_t>(n)] * Rational(fact);
      if (entry.get_den() != 1)
        throw InternalError("figure3_table: a count came out non-integral");
      row.push_back(entry.get_num());
    }
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace coxsmooth
