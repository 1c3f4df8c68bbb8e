#include "coxsmooth/smoothness.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "coxsmooth/coxeter.hpp"
#include "coxsmooth/errors.hpp"
#include "coxsmooth/fixtures.hpp"

namespace coxsmooth {

namespace {

Word alternating(int x, int y, int len) {
  Word w;
  w.reserve(static_cast<std::size_t>(std::max(len, 0)));
  for (int i = 0; i < len; ++i) w.push_back(i % 2 ? y : x);
  return w;
}

bool bp_lemma_holds(const ParabolicDecomposition& pd) {
  const std::vector<int> dr = right_descents(pd.u);
  for (int s : support(pd.v)) {
    if (!std::binary_search(pd.J.begin(), pd.J.end(), s)) continue;
    if (!std::binary_search(dr.begin(), dr.end(), s)) return false;
  }
  return true;
}

bool matches_pattern(const GroupElement& v, const Word& pattern) {
  if (static_cast<int>(pattern.size()) != v.length()) return false;
  return canonical(v.system(), pattern) == v;
}

std::optional<VFactorClass> try_case3(const GroupElement& v,
                                      const std::vector<int>& sup) {
  const CoxeterSystem& sys = *v.system();
  if (v.length() % 2 != 0) return std::nullopt;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (sup[i] == sup[j]) continue;
      if (sys.bond_label(sup[i], sup[j]) != 3) return std::nullopt;
    }
  std::array<int, 3> cycle{sup[0], sup[1], sup[2]};
  std::sort(cycle.begin(), cycle.end());
  do {
    Word pattern;
    for (int i = 0; i < v.length(); ++i)
      pattern.push_back(cycle[static_cast<std::size_t>(i % 3)]);
    if (matches_pattern(v, pattern))
      return VFactorClass{VFactorTag::Case3, v.length(), cycle, 0};
  } while (std::next_permutation(cycle.begin(), cycle.end()));
  return std::nullopt;
}

std::optional<VFactorClass> try_case1(const GroupElement& v,
                                      const std::vector<int>& sup) {
  const CoxeterSystem& sys = *v.system();
  std::array<int, 3> rst{sup[0], sup[1], sup[2]};
  std::sort(rst.begin(), rst.end());
  do {
    const int r = rst[0], s = rst[1], t = rst[2];
    const int m_st = sys.bond_label(s, t);
    if (m_st < 3 || m_st == kInfiniteBond) continue;
    if (sys.bond_label(r, t) != 3) continue;
    if (v.length() != m_st + 1) continue;
    Word pattern{t, r};
    const Word braid = alternating(s, t, m_st - 1);
    pattern.insert(pattern.end(), braid.begin(), braid.end());
    if (matches_pattern(v, pattern))
      return VFactorClass{VFactorTag::Case1, v.length(), rst, m_st};
  } while (std::next_permutation(rst.begin(), rst.end()));
  return std::nullopt;
}

std::optional<VFactorClass> try_case2(const GroupElement& v,
                                      const std::vector<int>& sup) {
  const CoxeterSystem& sys = *v.system();
  std::array<int, 3> rst{sup[0], sup[1], sup[2]};
  std::sort(rst.begin(), rst.end());
  do {
    const int r = rst[0], s = rst[1], t = rst[2];
    const int m_st = sys.bond_label(s, t);
    if (m_st <= 3 || m_st == kInfiniteBond) continue;
    if (sys.bond_label(r, t) != 3 || sys.bond_label(r, s) != 3) continue;
    if (v.length() != m_st + 3) continue;
    Word pattern{r, s, t, r};
    const Word braid = alternating(s, t, m_st - 1);
    pattern.insert(pattern.end(), braid.begin(), braid.end());
    if (matches_pattern(v, pattern))
      return VFactorClass{VFactorTag::Case2, v.length(), rst, m_st};
  } while (std::next_permutation(rst.begin(), rst.end()));
  return std::nullopt;
}

}  // namespace

std::vector<GrassmannianStep> grassmannian_factorizations(
    const GroupElement& w) {
  if (!w.system())
    throw UserError("grassmannian_factorizations: element has no Coxeter system");
  std::vector<GrassmannianStep> out;
  const std::vector<int> sup = support(w);
  for (int s : sup) {
    std::vector<int> J;
    for (int a : sup)
      if (a != s) J.push_back(a);
    ParabolicDecomposition pd = parabolic_decomposition(w, J);
    if (support(pd.u) != J) continue;
    GrassmannianStep step;
    step.J = std::move(pd.J);
    step.removed = s;
    step.u = std::move(pd.u);
    step.v = std::move(pd.v);
    step.bp_verified = bp_lemma_holds(
        ParabolicDecomposition{step.J, step.u, step.v, w});
    out.push_back(std::move(step));
  }
  return out;
}

VFactorClass classify_v(const GrassmannianStep& step) {
  const GroupElement& v = step.v;
  if (!v.system()) throw UserError("classify_v: element has no Coxeter system");
  const std::vector<int> sup = support(v);

  if (sup.size() <= 2)
    return VFactorClass{VFactorTag::RankLE2, v.length(), {-1, -1, -1}, 0};

  if (sup.size() == 3) {
    if (auto c3 = try_case3(v, sup)) {
      if (auto c1 = try_case1(v, sup))
        if (closed_form_relative(*c3) != closed_form_relative(*c1))
          throw InternalError(
              "classify_v: overlapping spiral/braid cases disagree on the "
              "closed form for '" + v.to_string() + "'");
      return *c3;
    }
    if (auto c1 = try_case1(v, sup)) return *c1;
    if (auto c2 = try_case2(v, sup)) return *c2;
  }

  throw TheoremViolation(
      "classify_v: the factor '" + v.to_string() + "' of group '" +
      v.system()->name +
      "' matches no case of the factorization theorem (support size " +
      std::to_string(sup.size()) + ")");
}

QPolynomial closed_form_relative(const VFactorClass& cls) {
  const int len = cls.length;
  switch (cls.tag) {
    case VFactorTag::RankLE2:
      return q_integer(len + 1);
    case VFactorTag::Case1:
      return q_integer(len + 1) + q_integer(len - 3).shifted(2);
    case VFactorTag::Case2:
      return q_integer(len + 1) + q_integer(len - 3).shifted(2) +
             q_integer(len - 6).shifted(4);
    case VFactorTag::Case3: {
      QPolynomial acc;
      for (int i = 0; 4 * i <= len; ++i)
        acc += q_integer(len - 4 * i + 1).shifted(2 * i);
      return acc;
    }
  }
  throw InternalError("closed_form_relative: unknown class tag");
}

FactorizationChain fast_poincare(const GroupElement& w) {
  if (!w.system()) throw UserError("fast_poincare: element has no Coxeter system");
  const auto sys = w.system();
  if (!triangle_scan(*sys).avoids_hecke_triangles)
    throw UserError("fast_poincare: group '" + sys->name +
                    "' contains a Hecke triangle (2,b,c); the factorization "
                    "theorem does not apply");
  if (!two_palindromic_quick(w))
    throw UserError("fast_poincare: '" + w.to_string() +
                    "' is not 2-palindromic (|pred| differs from |supp|)");

  std::vector<GrassmannianStep> steps;
  QPolynomial acc(1);
  GroupElement cur = w;
  while (!cur.is_identity()) {
    std::vector<GrassmannianStep> all = grassmannian_factorizations(cur);
    if (all.empty())
      throw TheoremViolation("fast_poincare: no Grassmannian step exists for '" +
                             cur.to_string() + "'");
    GrassmannianStep step = std::move(all.front());
    if (!step.bp_verified)
      throw TheoremViolation(
          "fast_poincare: the Grassmannian step removing '" +
          sys->generator_name(step.removed) + "' from '" + cur.to_string() +
          "' fails the BP criterion");
    step.v_class = classify_v(step);
    acc *= closed_form_relative(*step.v_class);
    if (!two_palindromic_quick(step.u))
      throw TheoremViolation("fast_poincare: the left factor '" +
                             step.u.to_string() + "' is not 2-palindromic");
    steps.push_back(std::move(step));
    cur = steps.back().u;
  }
  std::reverse(steps.begin(), steps.end());

  int total_length = 0;
  GroupElement prod = GroupElement::identity(sys);
  for (const GrassmannianStep& step : steps) {
    total_length += step.v.length();
    prod = multiply(prod, step.v);
  }
  if (total_length != w.length() || prod != w)
    throw InternalError("fast_poincare: the factor chain does not multiply back to w");
  return FactorizationChain{std::move(steps), std::move(acc), w};
}

std::vector<GroupElement> separable_factorization(const GroupElement& w,
                                                  std::size_t cap) {
  if (!w.system())
    throw UserError("separable_factorization: element has no Coxeter system");
  const auto sys = w.system();
  for (int i = 0; i < sys->rank(); ++i)
    for (int j = i + 1; j < sys->rank(); ++j)
      if (sys->bond_label(i, j) == 2)
        throw UserError("separable_factorization: generators '" +
                        sys->generator_name(i) + "' and '" +
                        sys->generator_name(j) +
                        "' commute; all bonds must be >= 3");
  if (!two_palindromic_quick(w))
    throw UserError("separable_factorization: '" + w.to_string() +
                    "' is not 2-palindromic (|pred| differs from |supp|); "
                    "the block decomposition is only defined there");
  if (w.is_identity()) return {};

  auto chain_factors = [&](bool use_last) {
    std::vector<GroupElement> vs;
    GroupElement cur = w;
    while (!cur.is_identity()) {
      std::vector<GrassmannianStep> all = grassmannian_factorizations(cur);
      if (all.empty())
        throw TheoremViolation(
            "separable_factorization: no Grassmannian step exists for '" +
            cur.to_string() + "'");
      const GrassmannianStep& step = use_last ? all.back() : all.front();
      vs.push_back(step.v);
      cur = step.u;
    }
    std::reverse(vs.begin(), vs.end());
    return vs;
  };

  auto blocks_of = [&](const std::vector<GroupElement>& vs) {
    std::vector<GroupElement> blocks;
    for (const GroupElement& v : vs) {
      if (v.length() == 1)
        blocks.push_back(v);
      else if (blocks.empty())
        throw InternalError(
            "separable_factorization: the first chain factor has length > 1");
      else
        blocks.back() = multiply(blocks.back(), v);
    }
    return blocks;
  };

  const std::vector<GroupElement> blocks = blocks_of(chain_factors(false));

  GroupElement prod = GroupElement::identity(sys);
  std::vector<int> seen;
  for (const GroupElement& b : blocks) {
    prod = multiply(prod, b);
    for (int s : support(b)) {
      if (std::find(seen.begin(), seen.end(), s) != seen.end())
        throw InternalError(
            "separable_factorization: block supports are not pairwise disjoint");
      seen.push_back(s);
    }
  }
  if (prod != w)
    throw InternalError("separable_factorization: blocks do not multiply back to w");

  if (palindromicity_profile(w, cap).palindromic()) {
    std::vector<GroupElement> blocks2 = blocks_of(chain_factors(true));
    std::vector<GroupElement> a = blocks, b = blocks2;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
      throw InternalError(
          "separable_factorization: two complete chains yield different "
          "block decompositions of the palindromic element '" +
          w.to_string() + "'");
  }
  return blocks;
}

HeckeWitness hecke_witness(int b, int c) {
  if (b != kInfiniteBond && b < 3)
    throw UserError("hecke_witness: b must be >= 3 (possibly infinite)");
  if (c < 3 || c == kInfiniteBond)
    throw UserError("hecke_witness: c must satisfy 3 <= c < infinity");
  const auto sys = fixtures::make_triangle(2, b, c);
  // Generator indices: r = 0, s = 1, t = 2.
  Word u_word = alternating(1, 2, c - 1);
  std::reverse(u_word.begin(), u_word.end());
  Word w_word = std::move(u_word);
  w_word.push_back(0);
  const Word tail = alternating(2, 1, c - 2);
  w_word.insert(w_word.end(), tail.begin(), tail.end());

  GroupElement w = canonical(sys, w_word);
  if (w.length() != 2 * (c - 1))
    throw InternalError("hecke_witness: the witness word is not reduced");

  QPolynomial P = q_integer(c + 1) + q_integer(c - 1).shifted(1) +
                  (q_integer(c) + q_integer(c - 2).shifted(1)) *
                      q_integer(c - 1).shifted(1);
  return HeckeWitness{std::move(w), std::move(P)};
}

NonBpWitness non_bp_witness(int b, int c) {
  if (b != kInfiniteBond && b < 3)
    throw UserError("non_bp_witness: b must be >= 3 (possibly infinite)");
  if (c < 3 || c == kInfiniteBond)
    throw UserError("non_bp_witness: c must satisfy 3 <= c < infinity");
  const auto sys = fixtures::make_triangle(2, b, c);
  Word w_word{2, 1, 0};
  const Word tail = alternating(2, 1, c - 1);
  w_word.insert(w_word.end(), tail.begin(), tail.end());

  GroupElement w = canonical(sys, w_word);
  if (w.length() != c + 2)
    throw InternalError("non_bp_witness: the witness word is not reduced");

  const std::vector<int> J{1, 2};
  ParabolicDecomposition pd = parabolic_decomposition(w, J);
  if (support(pd.u) != J)
    throw TheoremViolation("non_bp_witness: the decomposition at {s,t} is not Grassmannian");
  if (pd.v.length() != c)
    throw InternalError("non_bp_witness: unexpected right-factor length");
  if (bp_lemma_holds(pd))
    throw TheoremViolation("non_bp_witness: the witness unexpectedly satisfies the BP criterion");
  if (!palindromicity_profile(w).palindromic())
    throw TheoremViolation("non_bp_witness: the witness is not palindromic");
  return NonBpWitness{std::move(w), J};
}

GroupElement find_h3_counterexample() {
  const auto sys = fixtures::make_h3();
  const auto levels = bfs_levels(sys, 15);
  std::size_t total = 0;
  std::vector<GroupElement> hits;
  for (const auto& level : levels) {
    total += level.size();
    for (const GroupElement& g : level) {
      if (!two_palindromic_quick(g)) continue;  // defect >= 4 needs 2-palindromic
      PalindromicityProfile prof = palindromicity_profile(g);
      if (!prof.palindromic() && *prof.defect >= 4) hits.push_back(g);
    }
  }
  if (total != 120)
    throw InternalError("find_h3_counterexample: the (2,3,5) group must have 120 elements");
  if (hits.size() != 1)
    throw TheoremViolation(
        "find_h3_counterexample: expected exactly one non-palindromic element "
        "of defect >= 4, found " + std::to_string(hits.size()));
  // With bonds m(r,s) = 2, m(r,t) = 3, m(s,t) = 5 the unique such element is
  // strstrstrstrst; under the role swap t <-> s (bonds 2/5/3) the same
  // element reads tsrtsrtsrtsrtr.
  const GroupElement expected =
      canonical(sys, Word{1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2});
  if (hits.front().length() != 14 || hits.front() != expected)
    throw TheoremViolation(
        "find_h3_counterexample: the element found differs from the expected "
        "length-14 word");
  PalindromicityProfile prof = palindromicity_profile(hits.front());
  if (!prof.defect.has_value() || *prof.defect != 4)
    throw TheoremViolation(
        "find_h3_counterexample: expected defect exactly 4, got " +
        (prof.defect ? std::to_string(*prof.defect) : std::string("none")));
  return hits.front();
}

}  // namespace coxsmooth
