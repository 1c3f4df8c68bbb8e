#ifndef COXSMOOTH_ELEMENT_HPP
#define COXSMOOTH_ELEMENT_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "coxsmooth/coxeter.hpp"

namespace coxsmooth {

// A word in the generators, by index into the system's generator list.
using Word = std::vector<int>;

// A vector in the reflection representation, simple-root coordinates.
using RootVector = std::vector<CyclotomicReal>;

inline constexpr int kTitsDefaultBound = 10;
inline constexpr std::size_t kDefaultLevelCap = 5'000'000;

// A group element in ShortLex normal form: among the reduced words for the
// element, the lexicographically least under the generator declaration
// order.  Equality/ordering/hash all look only at the word, which is a
// complete invariant once words are canonical.
class GroupElement {
 public:
  GroupElement() = default;
  static GroupElement identity(std::shared_ptr<const CoxeterSystem> sys);
  // Trusted constructor: `word` must already be the ShortLex normal form.
  // Library-internal fast paths use this; everyone else goes through
  // canonical().
  static GroupElement trusted_normal_form(std::shared_ptr<const CoxeterSystem> sys,
                                          Word word);

  const std::shared_ptr<const CoxeterSystem>& system() const { return sys_; }
  const Word& word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  bool is_identity() const { return word_.empty(); }

  bool operator==(const GroupElement& o) const;
  bool operator!=(const GroupElement& o) const { return !(*this == o); }
  // Length-then-lex: the enumeration order used everywhere.
  bool operator<(const GroupElement& o) const;

  // Space-separated generator names; "e" for the identity.
  std::string to_string() const;

 private:
  std::shared_ptr<const CoxeterSystem> sys_;
  Word word_;
};

// ---- word-level operations (words need not be reduced) ----

RootVector simple_root(const CoxeterSystem& sys, int s);

// Image of v under the word, rightmost letter applied first (so a word
// denotes the product of its letters acting on the left).
RootVector act(const CoxeterSystem& sys, const Word& word, RootVector v);

// Sign of a root vector: +1 (all coordinates >= 0, some > 0) or -1.  A
// mixed-sign or zero vector means the representation theory went wrong and
// raises InternalError.
int root_vector_sign(const CoxeterSystem& sys, const RootVector& v);

// s is a right descent of the element of `word` iff word(alpha_s) < 0.
bool is_right_descent_word(const CoxeterSystem& sys, const Word& word, int s);

// a is a left descent iff word^{-1}(alpha_a) < 0.
bool is_left_descent_word(const CoxeterSystem& sys, const Word& word, int a);

// True iff the word is reduced (every letter ascends); early exit.
bool word_is_reduced(const CoxeterSystem& sys, const Word& word);

// For a left descent `a` of the element of the REDUCED word w: the reduced
// word of a*w obtained by the strong exchange condition (delete the first
// position whose prefix carries alpha_a to a negative root).
Word left_descent_delete(const CoxeterSystem& sys, const Word& word, int a);

// Coxeter length of the element represented by the (arbitrary) word, by the
// incremental +-1 scan.
int word_length(const CoxeterSystem& sys, const Word& word);

// Some reduced word for the same element, by the delete-and-test scan.
Word reduce(const CoxeterSystem& sys, Word word);

// ShortLex normal form, by repeated extraction of the minimal left descent.
GroupElement canonical(std::shared_ptr<const CoxeterSystem> sys, Word word);

// Word-problem cross-check backend: saturate the word under braid
// substitutions; the word is non-reduced iff some word in the closure has an
// adjacent equal pair.  Exponential; |word| must be <= bound.
bool tits_is_reduced(const CoxeterSystem& sys, const Word& word,
                     int bound = kTitsDefaultBound);

// ---- element-level operations ----

GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);
std::vector<int> right_descents(const GroupElement& a);
std::vector<int> left_descents(const GroupElement& a);
// Sorted distinct generators of the normal form (independent of the choice
// of reduced word).
std::vector<int> support(const GroupElement& a);

// Bruhat coatoms: every one-letter deletion of the normal form,
// canonicalized, filtered to length l-1, deduplicated.
std::vector<GroupElement> predecessors(const GroupElement& a);

// |predecessors(a)| without canonicalization: counts deletions that stay
// reduced (reduced deletions are pairwise distinct elements because the
// inversion roots of a reduced word are pairwise distinct).
long predecessor_count(const GroupElement& a);

// The coatom-counting test for 2-palindromicity: |pred(w)| == |supp(w)|.
// Uses predecessor_count with early exit past |supp| (sound: always
// |pred| >= |supp|).
bool two_palindromic_quick(const GroupElement& a);

// An alternative reduced word for the element: repeated extraction of the
// MAXIMAL left descent.  Used by consistency checks that want a second word
// independent of the normal form.
Word max_descent_word(const GroupElement& a);

// ---- exact dense representation matrices (internal workhorse) ----

// Images of all simple roots under w, column j = w(alpha_j), stored flat.
// Faithful, so it is the dedup key for enumeration and interval DP; column
// updates give O(rank^2) successor steps and O(rank) descent reads.
class RootMatrix {
 public:
  RootMatrix() = default;
  explicit RootMatrix(const CoxeterSystem& sys);  // identity
  // M <- M * M_s (right multiplication; column update).
  void right_multiply(const CoxeterSystem& sys, int s);
  // M <- M_s * M (left multiplication; reflect each column).
  void left_multiply(const CoxeterSystem& sys, int s);
  // Sign of column j, i.e. whether j is a right descent of w (-1 = descent).
  int column_sign(const CoxeterSystem& sys, int j) const;
  bool operator==(const RootMatrix& o) const { return a_ == o.a_; }
  std::size_t hash() const;

 private:
  std::vector<Rational> a_;  // column-major blocks of rank*degree rationals
  int n_ = 0, d_ = 0;
};

// Breadth-first enumeration of the whole group up to max_length, levels
// sorted ShortLex.  Deduplication is by representation matrix; normal forms
// are the min-merge over all discovery edges.  Throws CapExceeded if a level
// would exceed `cap` elements.
std::vector<std::vector<GroupElement>> bfs_levels(
    std::shared_ptr<const CoxeterSystem> sys, int max_length,
    std::size_t cap = kDefaultLevelCap);

}  // namespace coxsmooth

template <>
struct std::hash<coxsmooth::GroupElement> {
  std::size_t operator()(const coxsmooth::GroupElement& g) const {
    std::size_t h = 0x811c9dc5;
    for (int s : g.word())
      coxsmooth::hash_combine(h, static_cast<std::size_t>(s) + 0x9e37);
    return h;
  }
};

#endif
