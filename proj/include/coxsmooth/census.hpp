#pragma once

#include <memory>
#include <string>
#include <vector>

#include "coxsmooth/coxeter.hpp"
#include "coxsmooth/element.hpp"
#include "coxsmooth/series.hpp"

namespace coxsmooth {

inline constexpr std::size_t kDefaultQOrder = 64;
inline constexpr std::size_t kDefaultTOrder = 8;

enum class CensusMode { palindromic, two_palindromic };

struct CensusReport {
  std::string system_name;
  int max_length = 0;
  CensusMode mode = CensusMode::palindromic;
  std::vector<long> counts_by_length;  // counts_by_length[i] = hits of length i
  long total = 0;
  // Canonical elements sorted by (length, word); filled only when requested.
  std::vector<GroupElement> elements;
};

// Exhaustive duplicate-free enumeration grouped by length, ShortLex-sorted
// within each length.
std::vector<std::vector<GroupElement>> enumerate_by_length(
    std::shared_ptr<const CoxeterSystem> sys, int max_length,
    std::size_t cap = kDefaultLevelCap);

// Counts (2-)palindromic elements by length.  Candidates are prefiltered by
// the cheap |pred(w)| = |supp(w)| test; every survivor's interval defect is
// then computed, which also cross-checks the shortcut.  A sample of the
// rejected elements is re-checked the slow way as well.
CensusReport palindromic_census(std::shared_ptr<const CoxeterSystem> sys,
                                int max_length, CensusMode mode,
                                bool list_elements = false,
                                std::size_t cap = kDefaultLevelCap);

// The generating series phi_m(q,t) of inseparable palindromic elements of
// uniform groups, as an exact truncated expansion of the closed rational
// form.  m >= 3 or kInfiniteBond; m = 2 is rejected (Phi_series handles it).
BivariateSeries phi_series(int m, std::size_t q_order = kDefaultQOrder,
                           std::size_t t_order = kDefaultTOrder);

// Phi_m(q,t) = exp(t) / (1 - phi_m(q,t)); for m = 2 directly exp(qt + t).
// n! times the t^n coefficient counts palindromic elements of W(m,n) by
// length.
BivariateSeries Phi_series(int m, std::size_t q_order = kDefaultQOrder,
                           std::size_t t_order = kDefaultTOrder);

// The 1/n!-normalized inseparable-count polynomials, split by whether the
// final braid factor is even (A_n) or odd (B_n).
struct RecurrencePair {
  int n = 0;
  std::vector<Rational> A;  // ascending q-coefficients
  std::vector<Rational> B;
};

// For 4 <= m < infinity the pairs are exact polynomials: A_1 = q, B_1 = 0,
// A_2 = q^3 [m-3]_q, B_2 = q^m / 2, and for n >= 3
//   A_n = q^2 [m-3]_q (A_{n-1} + 2 B_{n-1}),  B_n = q^{m-1} (A_{n-1} + 2 B_{n-1}).
// For m = 3: A_1 = q, A_n = 0 for n >= 2, and B_n is the geometric closed
// form (q^3/2) (2q^2/(1-q^2))^{n-2} truncated to q_order.
std::vector<RecurrencePair> recurrence_pairs(int m, int n_max,
                                             std::size_t q_order = kDefaultQOrder);

// Total palindromic counts of W(m,n): rows m in [m_lo, m_hi], columns n in
// [n_lo, n_hi].  Uses the exact q = 1 specialization of the closed rational
// form, so it needs no q-truncation; requires 4 <= m (finite totals).
std::vector<std::vector<Integer>> figure3_table(int m_lo, int m_hi, int n_lo,
                                                int n_hi);

}  // namespace coxsmooth
