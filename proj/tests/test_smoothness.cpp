#include <algorithm>
#include <memory>
#include <random>
#include <vector>

#include "doctest.h"

#include "coxsmooth/bruhat.hpp"
#include "coxsmooth/element.hpp"
#include "coxsmooth/errors.hpp"
#include "coxsmooth/fixtures.hpp"
#include "coxsmooth/qpoly.hpp"
#include "coxsmooth/smoothness.hpp"

using namespace coxsmooth;

namespace {

QPolynomial poly(std::vector<long> coeffs) {
  std::vector<Integer> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return QPolynomial(std::move(c));
}

// Descending three-generator cycle word t, s, r, t, s, r, ... truncated to
// `len` letters, over the generator indices given in descending order.
Word spiral_word(std::array<int, 3> desc, int len) {
  Word w;
  for (int i = 0; i < len; ++i)
    w.push_back(desc[static_cast<std::size_t>(i % 3)]);
  return w;
}

const Word kPalindromicWord{0, 1, 0, 2, 1, 0, 2, 1, 0, 3};
const Word kDefect3Word{1, 3, 1, 3, 0, 1, 3, 0, 1, 3, 1};

}  // namespace

TEST_CASE("Grassmannian steps: structure on small elements") {
  SUBCASE("identity and single generators") {
    auto sys = fixtures::make_clique4();
    CHECK(grassmannian_factorizations(GroupElement::identity(sys)).empty());
    auto steps = grassmannian_factorizations(canonical(sys, Word{1}));
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].J.empty());
    CHECK(steps[0].removed == 1);
    CHECK(steps[0].u.is_identity());
    CHECK(steps[0].v == canonical(sys, Word{1}));
    CHECK(steps[0].bp_verified);
  }
  SUBCASE("both steps of the I2(4) longest element") {
    auto d4 = fixtures::make_dihedral(4);
    auto w0 = canonical(d4, Word{0, 1, 0, 1});
    auto steps = grassmannian_factorizations(w0);
    REQUIRE(steps.size() == 2);
    // Ordered by removed generator.
    CHECK(steps[0].removed == 0);
    CHECK(steps[0].J == std::vector<int>{1});
    CHECK(steps[0].u == canonical(d4, Word{1}));
    CHECK(steps[0].v == canonical(d4, Word{0, 1, 0}));
    CHECK(steps[0].bp_verified);
    CHECK(steps[1].removed == 1);
    CHECK(steps[1].J == std::vector<int>{0});
    CHECK(steps[1].u == canonical(d4, Word{0}));
    CHECK(steps[1].v == canonical(d4, Word{1, 0, 1}));
    CHECK(steps[1].bp_verified);
  }
  SUBCASE("steps reconstruct the element and grow the support by one") {
    std::mt19937 rng(246);
    auto sys = fixtures::make_uniform(4, 3);
    std::uniform_int_distribution<int> len(1, 8);
    for (int trial = 0; trial < 60; ++trial) {
      Word w(static_cast<std::size_t>(len(rng)));
      for (auto& x : w) x = rng() % 3;
      auto g = canonical(sys, w);
      if (g.is_identity()) continue;
      for (const auto& step : grassmannian_factorizations(g)) {
        CHECK(multiply(step.u, step.v) == g);
        CHECK(step.u.length() + step.v.length() == g.length());
        CHECK(support(step.u) == step.J);
        auto sv = support(step.v);
        CHECK(std::find(sv.begin(), sv.end(), step.removed) != sv.end());
        CHECK(!step.v_class.has_value());  // classification is on demand
      }
    }
  }
}

TEST_CASE("v-factor classification and closed forms") {
  auto sys = fixtures::make_clique4();
  SUBCASE("rank <= 2 factors") {
    GrassmannianStep step;
    step.J = {0};
    step.removed = 1;
    step.u = canonical(sys, Word{0});
    step.v = canonical(sys, Word{1, 0});
    auto cls = classify_v(step);
    CHECK(cls.tag == VFactorTag::RankLE2);
    CHECK(cls.length == 2);
    CHECK(closed_form_relative(cls) == poly({1, 1, 1}));
    // Closed forms for rank <= 2 are plain q-integers.
    for (int l = 0; l <= 5; ++l)
      CHECK(closed_form_relative(
                VFactorClass{VFactorTag::RankLE2, l, {-1, -1, -1}, 0}) ==
            q_integer(l + 1));
  }
  SUBCASE("the spiral factor of the length-10 example") {
    GrassmannianStep step;
    step.J = {0, 1};
    step.removed = 2;
    step.u = canonical(sys, Word{0, 1, 0});
    step.v = canonical(sys, Word{2, 1, 0, 2, 1, 0});
    auto cls = classify_v(step);
    CHECK(cls.tag == VFactorTag::Case3);
    CHECK(cls.length == 6);
    CHECK(closed_form_relative(cls) == poly({1, 1, 2, 2, 2, 1, 1}));
    CHECK(closed_form_relative(cls) ==
          relative_poincare(step.v, step.J));
  }
  SUBCASE("closed-form formulas at specific lengths") {
    // Second pattern: one extra reflection below the top.
    CHECK(closed_form_relative(
              VFactorClass{VFactorTag::Case1, 6, {0, 1, 2}, 3}) ==
          poly({1, 1, 2, 2, 2, 1, 1}));
    // Third pattern: two extra layers.
    CHECK(closed_form_relative(
              VFactorClass{VFactorTag::Case2, 7, {0, 1, 3}, 4}) ==
          poly({1, 1, 2, 2, 3, 2, 1, 1}));
    // Spiral sums: length 4 agrees with the second pattern at length 4.
    CHECK(closed_form_relative(
              VFactorClass{VFactorTag::Case3, 4, {2, 1, 0}, 0}) ==
          closed_form_relative(
              VFactorClass{VFactorTag::Case1, 4, {0, 1, 2}, 3}));
    CHECK(closed_form_relative(
              VFactorClass{VFactorTag::Case3, 4, {2, 1, 0}, 0}) ==
          poly({1, 1, 2, 1, 1}));
  }
  SUBCASE("spiral factors match brute force for all even lengths") {
    auto u33 = fixtures::make_uniform(3, 3);
    auto top = canonical(u33, Word{0, 1, 0});
    for (int len : {4, 6, 8, 10, 12}) {
      CAPTURE(len);
      auto v = canonical(u33, spiral_word({2, 1, 0}, len));
      REQUIRE(v.length() == len);  // the spiral word is reduced
      GrassmannianStep step;
      step.J = {0, 1};
      step.removed = 2;
      step.u = top;
      step.v = v;
      auto cls = classify_v(step);
      CHECK(cls.tag == VFactorTag::Case3);
      CHECK(cls.length == len);
      CHECK(closed_form_relative(cls) == relative_poincare(v, step.J));
    }
    // Length 2 of the same pattern has rank-2 support.
    GrassmannianStep short_step;
    short_step.J = {0, 1};
    short_step.removed = 2;
    short_step.u = top;
    short_step.v = canonical(u33, spiral_word({2, 1, 0}, 2));
    CHECK(classify_v(short_step).tag == VFactorTag::RankLE2);
    // Odd spiral lengths match no case: such factors never arise from
    // 2-palindromic elements, and the classifier refuses them loudly.
    GrassmannianStep odd_step;
    odd_step.J = {0, 1};
    odd_step.removed = 2;
    odd_step.u = top;
    odd_step.v = canonical(u33, spiral_word({2, 1, 0}, 3));
    CHECK_THROWS_AS(classify_v(odd_step), TheoremViolation);
  }
}

TEST_CASE("fast factorization reproduces brute-force polynomials") {
  auto sys = fixtures::make_clique4();
  SUBCASE("the palindromic length-10 example, full chain structure") {
    auto w = canonical(sys, kPalindromicWord);
    auto chain = fast_poincare(w);
    CHECK(chain.whole == w);
    CHECK(chain.closed_form ==
          poly({1, 4, 9, 15, 20, 22, 20, 15, 9, 4, 1}));
    CHECK(chain.closed_form == poincare(w));
    // Prefix products and per-factor invariants.
    auto prefix = GroupElement::identity(sys);
    for (const auto& f : chain.factors) {
      CHECK(f.u == prefix);
      CHECK(support(f.u) == f.J);
      CHECK(f.bp_verified);
      REQUIRE(f.v_class.has_value());
      CHECK(f.v.length() >= 1);
      prefix = multiply(prefix, f.v);
    }
    CHECK(prefix == w);
  }
  SUBCASE("the defect-3 length-11 example, expected factor classes") {
    auto w = canonical(sys, kDefect3Word);
    auto chain = fast_poincare(w);
    CHECK(chain.closed_form ==
          poly({1, 3, 6, 10, 14, 17, 17, 15, 11, 6, 3, 1}));
    REQUIRE(chain.factors.size() == 3);
    CHECK(chain.factors[0].v == canonical(sys, Word{3}));
    CHECK(chain.factors[1].v == canonical(sys, Word{1, 3, 1}));
    CHECK(chain.factors[2].v ==
          canonical(sys, Word{0, 1, 3, 0, 1, 3, 1}));
    const auto& cls = *chain.factors[2].v_class;
    CHECK(cls.tag == VFactorTag::Case2);
    CHECK(cls.length == 7);
    CHECK(cls.m_st == 4);
  }
  SUBCASE("identity has an empty chain") {
    auto chain = fast_poincare(GroupElement::identity(sys));
    CHECK(chain.factors.empty());
    CHECK(chain.closed_form == QPolynomial::one());
  }
  SUBCASE("sweep: every quick-2-palindromic element, four systems") {
    struct Sweep {
      std::shared_ptr<const CoxeterSystem> sys;
      int max_length;
    };
    std::vector<Sweep> sweeps = {{fixtures::make_clique4(), 6},
                                 {fixtures::make_uniform(3, 3), 8},
                                 {fixtures::make_uniform(4, 3), 8},
                                 {fixtures::make_mixed5(4), 6}};
    for (const auto& sweep : sweeps) {
      CAPTURE(sweep.sys->name);
      int tested = 0;
      for (const auto& lv : bfs_levels(sweep.sys, sweep.max_length))
        for (const auto& w : lv) {
          if (!two_palindromic_quick(w)) continue;
          auto chain = fast_poincare(w);
          CHECK(chain.closed_form == poincare(w));
          ++tested;
        }
      CHECK(tested > 10);
    }
  }
  SUBCASE("preconditions") {
    // A system with a (2,b,c) triangle is rejected.
    auto h3 = fixtures::make_h3();
    CHECK_THROWS_AS(fast_poincare(canonical(h3, Word{0, 1})), UserError);
    // A non-2-palindromic element is rejected.
    GroupElement bad;
    bool found = false;
    for (const auto& lv : bfs_levels(sys, 5)) {
      for (const auto& w : lv)
        if (!two_palindromic_quick(w)) {
          bad = w;
          found = true;
          break;
        }
      if (found) break;
    }
    REQUIRE(found);
    CHECK_THROWS_AS(fast_poincare(bad), UserError);
  }
}

TEST_CASE("separable factorization into inseparable blocks") {
  auto sys = fixtures::make_clique4();
  SUBCASE("a two-block element") {
    auto w = canonical(sys, Word{3, 1, 3, 1, 2, 0, 2});
    auto blocks = separable_factorization(w);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0] == canonical(sys, Word{1, 3, 1, 3}));
    CHECK(blocks[1] == canonical(sys, Word{0, 2, 0}));
    CHECK(multiply(blocks[0], blocks[1]) == w);
    // Supports are disjoint.
    auto s0 = support(blocks[0]);
    auto s1 = support(blocks[1]);
    for (int a : s0)
      CHECK(std::find(s1.begin(), s1.end(), a) == s1.end());
  }
  SUBCASE("the length-10 example splits off its final generator") {
    auto w = canonical(sys, kPalindromicWord);
    auto blocks = separable_factorization(w);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0] == canonical(sys, Word{0, 1, 0, 2, 1, 0, 2, 1, 0}));
    CHECK(blocks[1] == canonical(sys, Word{3}));
  }
  SUBCASE("inseparable elements come back whole") {
    auto w = canonical(sys, kDefect3Word);
    auto blocks = separable_factorization(w);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0] == w);
    auto single = separable_factorization(canonical(sys, Word{1}));
    REQUIRE(single.size() == 1);
    CHECK(single[0] == canonical(sys, Word{1}));
  }
  SUBCASE("identity gives no blocks") {
    CHECK(separable_factorization(GroupElement::identity(sys)).empty());
  }
  SUBCASE("block products and disjointness on a sweep") {
    for (const auto& lv : bfs_levels(sys, 6))
      for (const auto& w : lv) {
        if (!two_palindromic_quick(w)) continue;
        auto blocks = separable_factorization(w);
        auto prod = GroupElement::identity(sys);
        std::vector<int> seen;
        int total = 0;
        for (const auto& b : blocks) {
          prod = multiply(prod, b);
          total += b.length();
          for (int a : support(b)) {
            CHECK(std::find(seen.begin(), seen.end(), a) == seen.end());
            seen.push_back(a);
          }
        }
        CHECK(prod == w);
        CHECK(total == w.length());
      }
  }
  SUBCASE("bond-2 systems are rejected") {
    auto m5 = fixtures::make_mixed5(4);
    CHECK_THROWS_AS(separable_factorization(canonical(m5, Word{0})),
                    UserError);
  }
  SUBCASE("non-2-palindromic elements are rejected") {
    GroupElement bad;
    bool found = false;
    for (const auto& lv : bfs_levels(sys, 5)) {
      for (const auto& w : lv)
        if (!two_palindromic_quick(w)) {
          bad = w;
          found = true;
          break;
        }
      if (found) break;
    }
    REQUIRE(found);
    CHECK_THROWS_AS(separable_factorization(bad), UserError);
  }
}

TEST_CASE("dihedral-over-reflection witness family") {
  SUBCASE("(3,4): the length-6 witness with defect 2") {
    auto wit = hecke_witness(3, 4);
    CHECK(wit.w.length() == 6);
    CHECK(wit.w == canonical(wit.w.system(), Word{1, 2, 1, 0, 2, 1}));
    CHECK(wit.closed_form == poly({1, 3, 5, 7, 6, 3, 1}));
    CHECK(wit.closed_form == poincare(wit.w));
    auto profile = palindromicity_profile(wit.w);
    REQUIRE(profile.defect.has_value());
    CHECK(*profile.defect == 2);
  }
  SUBCASE("(3,5): the length-8 witness with defect 3") {
    auto wit = hecke_witness(3, 5);
    CHECK(wit.w.length() == 8);
    CHECK(wit.closed_form == poly({1, 3, 5, 7, 9, 8, 5, 3, 1}));
    CHECK(wit.closed_form == poincare(wit.w));
    auto profile = palindromicity_profile(wit.w);
    REQUIRE(profile.defect.has_value());
    CHECK(*profile.defect == 3);
  }
  SUBCASE("other parameters: closed form always matches brute force") {
    for (auto [b, c] : std::vector<std::pair<int, int>>{
             {4, 4}, {5, 4}, {4, 5}, {kInfiniteBond, 4}}) {
      CAPTURE(b);
      CAPTURE(c);
      auto wit = hecke_witness(b, c);
      CHECK(wit.w.length() == 2 * c - 2);
      CHECK(wit.closed_form == poincare(wit.w));
      auto profile = palindromicity_profile(wit.w);
      CHECK(profile.two_palindromic);
      CHECK(!profile.palindromic());
    }
    // c = 3 degenerates: the right factor has rank-2 support and the
    // witness is not 2-palindromic, but the closed form still matches.
    auto wit = hecke_witness(3, 3);
    CHECK(wit.w.length() == 4);
    CHECK(wit.closed_form == poincare(wit.w));
  }
  SUBCASE("parameter domain") {
    CHECK_THROWS_AS(hecke_witness(2, 4), UserError);
    CHECK_THROWS_AS(hecke_witness(3, 2), UserError);
    CHECK_THROWS_AS(hecke_witness(3, kInfiniteBond), UserError);
  }
}

TEST_CASE("non-BP witness family") {
  for (auto [b, c] :
       std::vector<std::pair<int, int>>{{3, 3}, {3, 4}, {4, 4}}) {
    CAPTURE(b);
    CAPTURE(c);
    auto wit = non_bp_witness(b, c);
    auto sys = wit.w.system();
    CHECK(wit.J == std::vector<int>{1, 2});
    // The decomposition is Grassmannian (support grows by one) ...
    auto d = parabolic_decomposition(wit.w, wit.J);
    CHECK(d.u == canonical(sys, Word{2, 1}));  // ts
    CHECK(support(d.u) == wit.J);
    CHECK(right_descents(d.u) == std::vector<int>{1});
    auto sv = support(d.v);
    CHECK(sv == std::vector<int>{0, 1, 2});
    // ... but fails the BP criterion in both formulations: supp(v) meets J
    // in {s, t}, which is not inside D_R(u) = {s}.
    CHECK(!is_bp(wit.w, wit.J, BpMethod::lemma));
    CHECK(!is_bp(wit.w, wit.J, BpMethod::definition));
    // The enclosing element is nevertheless palindromic.
    CHECK(palindromicity_profile(wit.w).palindromic());
  }
}

TEST_CASE("the (2,3,5) sweep finds the unique high-defect element") {
  auto g = find_h3_counterexample();
  CHECK(g.length() == 14);
  // The function builds its own copy of the (2,3,5) system; compare by
  // normal-form word and by bond labels rather than across systems.
  CHECK(g.word() == Word{1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2});
  CHECK(g.system()->bond_label(0, 1) == 2);
  CHECK(g.system()->bond_label(0, 2) == 3);
  CHECK(g.system()->bond_label(1, 2) == 5);
  auto profile = palindromicity_profile(g);
  CHECK(profile.poincare ==
        poly({1, 3, 5, 7, 9, 11, 12, 12, 12, 12, 10, 7, 5, 3, 1}));
  REQUIRE(profile.defect.has_value());
  CHECK(*profile.defect == 4);
  CHECK(is_k_palindromic(profile.poincare, 4));
  CHECK(!is_k_palindromic(profile.poincare, 5));
  // No other element of the group shares length >= 14 with a defect >= 4
  // polynomial, and the group's full sweep is what the function performed;
  // spot-check the complements: the longest element is palindromic.
  auto h3 = fixtures::make_h3();
  auto levels = bfs_levels(h3, 15);
  auto w0 = levels[15][0];
  CHECK(palindromicity_profile(w0).palindromic());
}

TEST_CASE("even spirals close up to palindromic composites") {
  SUBCASE("rank-3 uniform system") {
    auto u33 = fixtures::make_uniform(3, 3);
    for (int len : {2, 4, 6, 8}) {
      CAPTURE(len);
      Word w = {0, 1, 0};
      Word tail = spiral_word({2, 1, 0}, len);
      w.insert(w.end(), tail.begin(), tail.end());
      auto g = canonical(u33, w);
      REQUIRE(g.length() == 3 + len);
      auto profile = palindromicity_profile(g);
      CHECK(profile.palindromic());
      CHECK(fast_poincare(g).closed_form == profile.poincare);
    }
  }
  SUBCASE("rank-4 fixture, spiral then a fresh generator") {
    auto sys = fixtures::make_clique4();
    for (int len : {2, 4, 6, 8}) {
      CAPTURE(len);
      Word w = {0, 1, 0};
      Word tail = spiral_word({2, 1, 0}, len);
      w.insert(w.end(), tail.begin(), tail.end());
      w.push_back(3);
      auto g = canonical(sys, w);
      REQUIRE(g.length() == 4 + len);
      auto profile = palindromicity_profile(g);
      CHECK(profile.palindromic());
      CHECK(fast_poincare(g).closed_form == profile.poincare);
    }
  }
}

TEST_CASE("palindromic elements stop at bounded length in W(4,3)") {
  // Everything palindromic in this system has length <= 7; sweeping well
  // past that bound finds nothing new.
  auto sys = fixtures::make_uniform(4, 3);
  long total = 0;
  int longest = 0;
  for (const auto& lv : bfs_levels(sys, 12))
    for (const auto& w : lv) {
      if (!two_palindromic_quick(w)) continue;
      auto profile = palindromicity_profile(w);
      if (profile.palindromic()) {
        ++total;
        longest = std::max(longest, w.length());
      }
    }
  CHECK(total == 67);
  CHECK(longest == 7);
}
