#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coxsmooth/element.hpp"
#include "coxsmooth/qpoly.hpp"

namespace coxsmooth {

// Maximum number of interval members materialized before CapExceeded.
inline constexpr std::size_t kDefaultIntervalCap = 5'000'000;

// The Bruhat lower interval [e, w], built by a subword dynamic program over a
// reduced word of w.  Members are stored as parent/letter chains (so each
// member carries a reduced word reachable by walking to the root) together
// with their root-matrix keys for O(1) membership queries.
class LowerInterval {
 public:
  const GroupElement& apex() const { return apex_; }
  std::size_t size() const { return nodes_.size(); }

  // rank_counts()[i] = #{x <= apex : length(x) = i}.
  const std::vector<std::size_t>& rank_counts() const { return rank_counts_; }

  // Poincare polynomial: sum over members of q^length.
  QPolynomial poincare() const;

  // Counts only members x with D_L(x) and J disjoint (minimal coset
  // representatives for W_J \ W).  J holds generator indices.
  QPolynomial relative_filter_poincare(const std::vector<int>& J) const;

  // All members in canonical form, sorted by (length, word).
  std::vector<GroupElement> members() const;

  // Reduced word of member i obtained from its parent chain (not necessarily
  // the canonical word).
  Word member_word(std::size_t i) const;
  int member_length(std::size_t i) const;

  bool contains(const GroupElement& x) const;
  // Membership test keyed directly by a root matrix (advanced use; the matrix
  // must belong to the same Coxeter system).
  bool contains_matrix(const RootMatrix& m) const;

  const std::shared_ptr<const CoxeterSystem>& system() const { return sys_; }

 private:
  struct Node {
    RootMatrix m;
    int parent;  // index into nodes_, -1 for the identity
    int letter;  // generator on the edge from parent, -1 for the identity
    int length;
  };

  friend LowerInterval build_lower_interval(
      std::shared_ptr<const CoxeterSystem> sys, const GroupElement& apex,
      const Word& reduced_word, std::size_t cap);

  std::shared_ptr<const CoxeterSystem> sys_;
  GroupElement apex_;
  std::vector<Node> nodes_;
  std::unordered_map<std::size_t, std::vector<std::uint32_t>> index_;
  std::vector<std::size_t> rank_counts_;
};

// Builds [e, w] from the canonical word of w.
LowerInterval lower_interval(const GroupElement& w,
                             std::size_t cap = kDefaultIntervalCap);

// Builds [e, w] from a caller-supplied reduced word for w (used to check that
// the interval is independent of the chosen word).  Throws UserError if the
// word is not reduced.
LowerInterval lower_interval_from_word(
    std::shared_ptr<const CoxeterSystem> sys, const Word& reduced_word,
    std::size_t cap = kDefaultIntervalCap);

QPolynomial poincare(const GroupElement& w,
                     std::size_t cap = kDefaultIntervalCap);

// P_v^J: counts x <= v with D_L(x) and J disjoint.  Requires v in W^J
// (D_L(v) and J disjoint), else UserError.
QPolynomial relative_poincare(const GroupElement& v, const std::vector<int>& J,
                              std::size_t cap = kDefaultIntervalCap);

struct PalindromicityProfile {
  QPolynomial poincare;
  // Smallest i with a_i != a_{len-i}; empty when the polynomial is
  // palindromic.
  std::optional<long> defect;
  bool two_palindromic;

  bool palindromic() const { return !defect.has_value(); }
};

// Computes the Poincare polynomial and its palindromic defect, and
// cross-checks the counting shortcut |pred(w)| = |supp(w)| against
// "defect >= 2 or palindromic" (InternalError on disagreement).
PalindromicityProfile palindromicity_profile(
    const GroupElement& w, std::size_t cap = kDefaultIntervalCap);

struct ParabolicDecomposition {
  std::vector<int> J;  // sorted generator indices
  GroupElement u;      // in W_J
  GroupElement v;      // in W^J: no left descent lies in J
  GroupElement whole;  // u * v
};

// Unique factorization w = u * v with u in W_J and v in W^J, computed by
// repeatedly peeling the minimum generator of J that is a left descent of the
// remaining right factor.
ParabolicDecomposition parabolic_decomposition(const GroupElement& w,
                                               const std::vector<int>& J);

// The unique maximal element of [e, w] intersected with W_J.  Asserts both
// uniqueness of the length maximum and that it dominates every member of the
// filtered set in Bruhat order (InternalError otherwise: a violation would
// falsify a standard fact).
GroupElement max_in_parabolic_interval(const GroupElement& w,
                                       const std::vector<int>& J,
                                       std::size_t cap = kDefaultIntervalCap);

enum class BpMethod {
  lemma,       // supp(v) /\ J is contained in D_R(u)
  definition,  // u equals the maximum of [e, w] /\ W_J
};

// Tests whether the parabolic decomposition w = uv at J is a BP
// decomposition.  When the answer is true, the product identity
// P_w = P_u * P_v^J is asserted (InternalError on failure).
bool is_bp(const GroupElement& w, const std::vector<int>& J, BpMethod method,
           std::size_t cap = kDefaultIntervalCap);

}  // namespace coxsmooth
