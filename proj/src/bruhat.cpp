#include "coxsmooth/bruhat.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "coxsmooth/errors.hpp"

namespace coxsmooth {

namespace {

RootMatrix matrix_of_word(const CoxeterSystem& sys, const Word& word) {
  RootMatrix m(sys);
  for (int s : word) m.right_multiply(sys, s);
  return m;
}

void check_interval_system(const LowerInterval& iv, const GroupElement& x) {
  if (!x.system() || x.system().get() != iv.system().get())
    throw UserError("interval membership query with an element of a different Coxeter system");
}

std::vector<int> sorted_generator_set(const CoxeterSystem& sys,
                                      std::vector<int> J) {
  for (int a : J)
    if (a < 0 || a >= sys.rank())
      throw UserError("generator index " + std::to_string(a) +
                      " out of range for group '" + sys.name + "'");
  std::sort(J.begin(), J.end());
  J.erase(std::unique(J.begin(), J.end()), J.end());
  return J;
}

}  // namespace

// Subword dynamic program: S_0 = {e}; for each letter s_i of the reduced word
// in order, S_i = S_{i-1} union S_{i-1}*s_i.  Each S_i equals the lower
// interval of the length-i prefix, so it is closed downward in Bruhat order;
// consequently x*s with s a right descent of x is already present and only
// ascents need to be explored.
LowerInterval build_lower_interval(std::shared_ptr<const CoxeterSystem> sys,
                                   const GroupElement& apex,
                                   const Word& reduced_word, std::size_t cap) {
  LowerInterval iv;
  iv.sys_ = sys;
  iv.apex_ = apex;
  const CoxeterSystem& S = *sys;

  iv.nodes_.push_back({RootMatrix(S), -1, -1, 0});
  iv.index_[iv.nodes_[0].m.hash()].push_back(0);

  for (int s : reduced_word) {
    const std::size_t n_before = iv.nodes_.size();
    for (std::size_t i = 0; i < n_before; ++i) {
      if (iv.nodes_[i].m.column_sign(S, s) < 0) continue;  // descent: x*s < x
      RootMatrix m2 = iv.nodes_[i].m;
      m2.right_multiply(S, s);
      auto& bucket = iv.index_[m2.hash()];
      bool found = false;
      for (std::uint32_t id : bucket)
        if (iv.nodes_[id].m == m2) {
          found = true;
          break;
        }
      if (found) continue;
      if (iv.nodes_.size() >= cap)
        throw CapExceeded("lower interval of '" + apex.to_string() +
                          "' exceeds the cap of " + std::to_string(cap) +
                          " members");
      bucket.push_back(static_cast<std::uint32_t>(iv.nodes_.size()));
      iv.nodes_.push_back({std::move(m2), static_cast<int>(i), s,
                           iv.nodes_[i].length + 1});
    }
  }

  iv.rank_counts_.assign(reduced_word.size() + 1, 0);
  for (const auto& node : iv.nodes_)
    ++iv.rank_counts_[static_cast<std::size_t>(node.length)];
  if (iv.rank_counts_.front() != 1 || iv.rank_counts_.back() != 1)
    throw InternalError("lower interval rank counts must start and end at 1");
  return iv;
}

LowerInterval lower_interval(const GroupElement& w, std::size_t cap) {
  if (!w.system()) throw UserError("lower_interval: element has no Coxeter system");
  return build_lower_interval(w.system(), w, w.word(), cap);
}

LowerInterval lower_interval_from_word(std::shared_ptr<const CoxeterSystem> sys,
                                       const Word& reduced_word,
                                       std::size_t cap) {
  if (!sys) throw UserError("lower_interval_from_word: null Coxeter system");
  if (!word_is_reduced(*sys, reduced_word))
    throw UserError("lower_interval_from_word: the supplied word is not reduced");
  GroupElement apex = canonical(sys, reduced_word);
  return build_lower_interval(sys, apex, reduced_word, cap);
}

QPolynomial LowerInterval::poincare() const {
  std::vector<Integer> coeffs;
  coeffs.reserve(rank_counts_.size());
  for (std::size_t c : rank_counts_) coeffs.emplace_back(static_cast<unsigned long>(c));
  return QPolynomial(std::move(coeffs));
}

Word LowerInterval::member_word(std::size_t i) const {
  Word out;
  for (int at = static_cast<int>(i); at > 0; at = nodes_[static_cast<std::size_t>(at)].parent)
    out.push_back(nodes_[static_cast<std::size_t>(at)].letter);
  std::reverse(out.begin(), out.end());
  return out;
}

int LowerInterval::member_length(std::size_t i) const {
  return nodes_[i].length;
}

QPolynomial LowerInterval::relative_filter_poincare(
    const std::vector<int>& J) const {
  const std::vector<int> Js = sorted_generator_set(*sys_, J);
  std::vector<Integer> counts(rank_counts_.size(), Integer(0));
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Word w = member_word(i);
    bool minimal = true;
    for (int a : Js)
      if (is_left_descent_word(*sys_, w, a)) {
        minimal = false;
        break;
      }
    if (minimal) counts[static_cast<std::size_t>(nodes_[i].length)] += 1;
  }
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
  return QPolynomial(std::move(counts));
}

std::vector<GroupElement> LowerInterval::members() const {
  std::vector<GroupElement> out;
  out.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    out.push_back(canonical(sys_, member_word(i)));
  std::sort(out.begin(), out.end());
  return out;
}

bool LowerInterval::contains(const GroupElement& x) const {
  check_interval_system(*this, x);
  if (x.length() > apex_.length()) return false;
  return contains_matrix(matrix_of_word(*sys_, x.word()));
}

bool LowerInterval::contains_matrix(const RootMatrix& m) const {
  auto it = index_.find(m.hash());
  if (it == index_.end()) return false;
  for (std::uint32_t id : it->second)
    if (nodes_[id].m == m) return true;
  return false;
}

QPolynomial poincare(const GroupElement& w, std::size_t cap) {
  return lower_interval(w, cap).poincare();
}

QPolynomial relative_poincare(const GroupElement& v, const std::vector<int>& J,
                              std::size_t cap) {
  if (!v.system()) throw UserError("relative_poincare: element has no Coxeter system");
  const std::vector<int> Js = sorted_generator_set(*v.system(), J);
  for (int a : Js)
    if (is_left_descent_word(*v.system(), v.word(), a))
      throw UserError(
          "relative_poincare: '" + v.to_string() +
          "' is not a minimal coset representative (left descent '" +
          v.system()->generator_name(a) + "' lies in J)");
  return lower_interval(v, cap).relative_filter_poincare(Js);
}

PalindromicityProfile palindromicity_profile(const GroupElement& w,
                                             std::size_t cap) {
  LowerInterval iv = lower_interval(w, cap);
  QPolynomial P = iv.poincare();
  std::optional<long> defect = palindromic_defect(P);
  const bool slow = !defect.has_value() || *defect >= 2;
  const bool quick = two_palindromic_quick(w);
  if (quick != slow)
    throw InternalError(
        "palindromicity_profile: the predecessor/support shortcut disagrees "
        "with the interval defect for '" + w.to_string() + "'");
  return PalindromicityProfile{std::move(P), defect, slow};
}

ParabolicDecomposition parabolic_decomposition(const GroupElement& w,
                                               const std::vector<int>& J) {
  if (!w.system()) throw UserError("parabolic_decomposition: element has no Coxeter system");
  const auto sys = w.system();
  const std::vector<int> Js = sorted_generator_set(*sys, J);

  Word v_word = w.word();
  Word u_word;
  for (;;) {
    int pick = -1;
    for (int a : Js)
      if (is_left_descent_word(*sys, v_word, a)) {
        pick = a;
        break;
      }
    if (pick < 0) break;
    u_word.push_back(pick);
    v_word = left_descent_delete(*sys, v_word, pick);
  }

  ParabolicDecomposition out;
  out.J = Js;
  out.u = canonical(sys, u_word);
  out.v = canonical(sys, v_word);
  out.whole = w;

  if (out.u.length() + out.v.length() != w.length())
    throw InternalError("parabolic_decomposition: lengths do not add up");
  for (int a : support(out.u))
    if (!std::binary_search(Js.begin(), Js.end(), a))
      throw InternalError("parabolic_decomposition: support(u) is not contained in J");
  if (multiply(out.u, out.v) != w)
    throw InternalError("parabolic_decomposition: u * v differs from w");
  return out;
}

GroupElement max_in_parabolic_interval(const GroupElement& w,
                                       const std::vector<int>& J,
                                       std::size_t cap) {
  if (!w.system()) throw UserError("max_in_parabolic_interval: element has no Coxeter system");
  const auto sys = w.system();
  const std::vector<int> Js = sorted_generator_set(*sys, J);

  LowerInterval iv = lower_interval(w, cap);
  std::vector<std::size_t> filtered;
  int max_len = 0;
  for (std::size_t i = 0; i < iv.size(); ++i) {
    const Word word = iv.member_word(i);
    bool in_parabolic = true;
    for (int s : word)
      if (!std::binary_search(Js.begin(), Js.end(), s)) {
        in_parabolic = false;
        break;
      }
    if (!in_parabolic) continue;
    filtered.push_back(i);
    max_len = std::max(max_len, iv.member_length(i));
  }

  std::size_t top = filtered.size();
  for (std::size_t i : filtered)
    if (iv.member_length(i) == max_len) {
      if (top != filtered.size())
        throw InternalError(
            "max_in_parabolic_interval: the length maximum of [e,w] /\\ W_J "
            "is not unique");
      top = i;
    }
  GroupElement u_max = canonical(sys, iv.member_word(top));

  // Domination: every filtered member must lie below u_max in Bruhat order.
  LowerInterval dom = lower_interval(u_max, cap);
  for (std::size_t i : filtered)
    if (!dom.contains_matrix(matrix_of_word(*sys, iv.member_word(i))))
      throw InternalError(
          "max_in_parabolic_interval: the length maximum does not dominate "
          "all members of [e,w] /\\ W_J");
  return u_max;
}

bool is_bp(const GroupElement& w, const std::vector<int>& J, BpMethod method,
           std::size_t cap) {
  ParabolicDecomposition pd = parabolic_decomposition(w, J);

  bool result = false;
  switch (method) {
    case BpMethod::lemma: {
      const std::vector<int> dr = right_descents(pd.u);
      result = true;
      for (int s : support(pd.v)) {
        if (!std::binary_search(pd.J.begin(), pd.J.end(), s)) continue;
        if (!std::binary_search(dr.begin(), dr.end(), s)) {
          result = false;
          break;
        }
      }
      break;
    }
    case BpMethod::definition: {
      result = max_in_parabolic_interval(w, pd.J, cap) == pd.u;
      break;
    }
  }

  if (result) {
    const QPolynomial lhs = poincare(w, cap);
    const QPolynomial rhs =
        poincare(pd.u, cap) * relative_poincare(pd.v, pd.J, cap);
    if (lhs != rhs)
      throw InternalError(
          "is_bp: decomposition tested positive but the Poincare product "
          "identity fails for '" + w.to_string() + "'");
  }
  return result;
}

}  // namespace coxsmooth
