#pragma once

#include <array>
#include <optional>
#include <vector>

#include "coxsmooth/bruhat.hpp"
#include "coxsmooth/element.hpp"
#include "coxsmooth/qpoly.hpp"

namespace coxsmooth {

// Classification of the rightmost factor v of a Grassmannian factorization
// w = u*v, following the case analysis of the factorization theorem.
enum class VFactorTag { RankLE2, Case1, Case2, Case3 };

struct VFactorClass {
  VFactorTag tag = VFactorTag::RankLE2;
  int length = 0;
  // Case1 / Case2: the generator assignments (r, s, t).
  // Case3: the three-generator cycle of the spiral, in spiral order.
  std::array<int, 3> rst{-1, -1, -1};
  // Case1 / Case2: the braid bond m_st.
  int m_st = 0;
};

// One Grassmannian step of w: J = supp(w) minus {removed}, w = u*v the
// parabolic decomposition at J, which qualifies when supp(u) = J (so the
// support grows by exactly one generator at this step).
struct GrassmannianStep {
  std::vector<int> J;  // sorted generator indices, equals support(u)
  int removed = -1;    // the generator excluded from J
  GroupElement u;
  GroupElement v;
  // The lemma criterion: supp(v) /\ J is contained in D_R(u).
  bool bp_verified = false;
  std::optional<VFactorClass> v_class;
};

// All Grassmannian steps of w, ordered by the index of the removed
// generator.  The identity has none; a single generator yields the trivial
// step (J = {}, u = e, v = s).
std::vector<GrassmannianStep> grassmannian_factorizations(
    const GroupElement& w);

// Matches v against the theorem's case patterns, in the order
// Case3 -> Case1 -> Case2 (first match wins; the closed forms agree on
// overlaps, which is asserted).  Elements with |supp(v)| <= 2 are RankLE2.
// Throws TheoremViolation when no case matches: on a triangle-avoiding
// system with 2-palindromic enclosing element that would falsify the
// factorization theorem.
VFactorClass classify_v(const GrassmannianStep& step);

// Closed-form relative Poincare polynomial P_v^J of a classified v factor.
QPolynomial closed_form_relative(const VFactorClass& cls);

// A complete Grassmannian factorization w = v_1 v_2 ... v_k together with
// the closed-form Poincare polynomial assembled from the per-step classes.
// factors[i].u is the prefix product v_1 ... v_i (so factors[0].u = e and
// factors[i].J = supp(factors[i].u)).
struct FactorizationChain {
  std::vector<GrassmannianStep> factors;
  QPolynomial closed_form;
  GroupElement whole;
};

// Computes the Poincare polynomial of a 2-palindromic element of a
// triangle-avoiding system purely from closed forms, by repeatedly peeling
// the lowest-index Grassmannian step.  Never materializes a Bruhat interval.
// Preconditions (UserError): the system avoids Hecke triangles; w is
// 2-palindromic by the |pred| = |supp| count test.  A failed BP criterion or
// classifier mismatch raises TheoremViolation.
FactorizationChain fast_poincare(const GroupElement& w);

// Splits w into its inseparable blocks u_1, ..., u_d (product in order
// equals w, supports pairwise disjoint) by cutting a complete Grassmannian
// chain at the length-1 factors.  Preconditions (UserError): every
// off-diagonal bond of the system is >= 3, and w is 2-palindromic by the
// |pred| = |supp| count test (outside that domain the blocks need not have
// disjoint supports).  For palindromic w the block list is additionally
// recomputed from a second chain and asserted identical.
std::vector<GroupElement> separable_factorization(
    const GroupElement& w, std::size_t cap = kDefaultIntervalCap);

struct HeckeWitness {
  GroupElement w;
  QPolynomial closed_form;  // equals poincare(w); brute force is authoritative
};

// The (2,b,c) triangle-group witness family: w = u*v with
// u = reverse(stst...) of length c-1 and v = r followed by tst... of length
// c-2.  Requires 3 <= b (possibly infinite) and 3 <= c finite.
HeckeWitness hecke_witness(int b, int c);

struct NonBpWitness {
  GroupElement w;
  std::vector<int> J;  // {s, t}
};

// The (2,b,c) witness w = (ts)(r tst...) with length(v) = c whose parabolic
// decomposition at J = {s,t} is Grassmannian but not BP, while w itself is
// palindromic (both facts are checked here; TheoremViolation on failure).
NonBpWitness non_bp_witness(int b, int c);

// Sweeps all 120 elements of the (2,3,5) triangle group and returns the
// unique non-palindromic element of defect >= 4; asserts that it has length
// 14 and equals the expected canonical word (TheoremViolation otherwise).
GroupElement find_h3_counterexample();

}  // namespace coxsmooth
