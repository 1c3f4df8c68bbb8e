#include "coxsmooth/element.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "coxsmooth/errors.hpp"

namespace coxsmooth {

namespace {

// Flat root-vector block: rank * degree rationals, coordinate i at i*d.
using Block = std::vector<Rational>;

Block flat_simple_root(const CoxeterSystem& sys, int s) {
  const int n = sys.rank(), d = sys.field->degree;
  Block v(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  if (d == 1)
    v[static_cast<std::size_t>(s)] = 1;
  else
    v[static_cast<std::size_t>(s * d)] = 1;
  return v;
}

// v <- s(v): only coordinate s changes, by v_s -= sum_j 2B(alpha_s,alpha_j) v_j.
void flat_apply_letter(const CoxeterSystem& sys, Block& v, int s) {
  const int d = sys.field->degree;
  std::vector<Rational> acc(static_cast<std::size_t>(d));
  for (int j : sys.neighbors[static_cast<std::size_t>(s)]) {
    const auto& b = sys.bond[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)];
    const Rational* vj = v.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(d);
    if (fieldops::is_zero_span(d, vj)) continue;
    if (b.kind == CoxeterSystem::BondScalar::Kind::rational)
      fieldops::add_scaled_span(d, acc.data(), vj, b.r);
    else
      fieldops::acc_mul_span(*sys.field, acc.data(), b.c.data(), vj);
  }
  fieldops::sub_span(d, v.data() + static_cast<std::size_t>(s) * static_cast<std::size_t>(d),
                     acc.data());
}

int flat_vector_sign(const CoxeterSystem& sys, const Block& v) {
  const int n = sys.rank(), d = sys.field->degree;
  bool pos = false, neg = false;
  for (int i = 0; i < n; ++i) {
    int s = fieldops::sign_span(*sys.field, v.data() + static_cast<std::size_t>(i * d));
    if (s > 0) pos = true;
    if (s < 0) neg = true;
  }
  if (pos && neg)
    throw InternalError("root vector with mixed coordinate signs");
  if (!pos && !neg) throw InternalError("zero root vector");
  return pos ? 1 : -1;
}

void check_generator(const CoxeterSystem& sys, int s) {
  if (s < 0 || s >= sys.rank())
    throw UserError("generator index out of range: " + std::to_string(s));
}

void check_word(const CoxeterSystem& sys, const Word& w) {
  for (int s : w) check_generator(sys, s);
}

}  // namespace

// ---- GroupElement ----

GroupElement GroupElement::identity(std::shared_ptr<const CoxeterSystem> sys) {
  GroupElement g;
  g.sys_ = std::move(sys);
  return g;
}

GroupElement GroupElement::trusted_normal_form(
    std::shared_ptr<const CoxeterSystem> sys, Word word) {
  GroupElement g;
  g.sys_ = std::move(sys);
  g.word_ = std::move(word);
  return g;
}

namespace {
void check_same_system(const GroupElement& a, const GroupElement& b) {
  if (a.system().get() != b.system().get())
    throw UserError("group elements from mixed systems");
}
}  // namespace

bool GroupElement::operator==(const GroupElement& o) const {
  check_same_system(*this, o);
  return word_ == o.word_;
}

bool GroupElement::operator<(const GroupElement& o) const {
  check_same_system(*this, o);
  if (word_.size() != o.word_.size()) return word_.size() < o.word_.size();
  return word_ < o.word_;
}

std::string GroupElement::to_string() const {
  if (word_.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (i) s += ' ';
    s += sys_->generator_name(word_[i]);
  }
  return s;
}

// ---- word-level operations ----

RootVector simple_root(const CoxeterSystem& sys, int s) {
  check_generator(sys, s);
  RootVector v;
  v.reserve(static_cast<std::size_t>(sys.rank()));
  for (int i = 0; i < sys.rank(); ++i)
    v.push_back(CyclotomicReal::from_rational(sys.field, Rational(i == s ? 1 : 0)));
  return v;
}

RootVector act(const CoxeterSystem& sys, const Word& word, RootVector v) {
  check_word(sys, word);
  if (static_cast<int>(v.size()) != sys.rank())
    throw UserError("act: root vector has wrong dimension");
  const int d = sys.field->degree;
  Block b(static_cast<std::size_t>(sys.rank() * d));
  for (int i = 0; i < sys.rank(); ++i) {
    const auto& c = v[static_cast<std::size_t>(i)].coefficients();
    for (int k = 0; k < d; ++k) b[static_cast<std::size_t>(i * d + k)] = c[static_cast<std::size_t>(k)];
  }
  for (std::size_t i = word.size(); i-- > 0;) flat_apply_letter(sys, b, word[i]);
  RootVector out;
  out.reserve(v.size());
  for (int i = 0; i < sys.rank(); ++i) {
    fieldops::Coeffs c(b.begin() + i * d, b.begin() + (i + 1) * d);
    out.emplace_back(sys.field, std::move(c));
  }
  return out;
}

int root_vector_sign(const CoxeterSystem& sys, const RootVector& v) {
  const int d = sys.field->degree;
  Block b(static_cast<std::size_t>(sys.rank() * d));
  for (int i = 0; i < sys.rank(); ++i) {
    const auto& c = v[static_cast<std::size_t>(i)].coefficients();
    for (int k = 0; k < d; ++k) b[static_cast<std::size_t>(i * d + k)] = c[static_cast<std::size_t>(k)];
  }
  return flat_vector_sign(sys, b);
}

bool is_right_descent_word(const CoxeterSystem& sys, const Word& word, int s) {
  check_generator(sys, s);
  check_word(sys, word);
  Block v = flat_simple_root(sys, s);
  for (std::size_t i = word.size(); i-- > 0;) flat_apply_letter(sys, v, word[i]);
  return flat_vector_sign(sys, v) < 0;
}

bool is_left_descent_word(const CoxeterSystem& sys, const Word& word, int a) {
  check_generator(sys, a);
  check_word(sys, word);
  // word^{-1} acts by applying the letters leftmost first.
  Block v = flat_simple_root(sys, a);
  for (int s : word) flat_apply_letter(sys, v, s);
  return flat_vector_sign(sys, v) < 0;
}

int word_length(const CoxeterSystem& sys, const Word& word) {
  check_word(sys, word);
  int len = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    // Sign of (prefix)(alpha_{word[i]}): descent iff negative.
    Block v = flat_simple_root(sys, word[i]);
    for (std::size_t j = i; j-- > 0;) flat_apply_letter(sys, v, word[j]);
    len += (flat_vector_sign(sys, v) < 0) ? -1 : 1;
  }
  return len;
}

bool word_is_reduced(const CoxeterSystem& sys, const Word& word) {
  check_word(sys, word);
  for (std::size_t i = 1; i < word.size(); ++i) {
    Block v = flat_simple_root(sys, word[i]);
    for (std::size_t j = i; j-- > 0;) flat_apply_letter(sys, v, word[j]);
    if (flat_vector_sign(sys, v) < 0) return false;
  }
  return true;
}

Word reduce(const CoxeterSystem& sys, Word word) {
  check_word(sys, word);
  Word r;
  r.reserve(word.size());
  for (int s : word) {
    if (!is_right_descent_word(sys, r, s)) {
      r.push_back(s);
      continue;
    }
    // R*s is shorter: find j with delete(R, j) == R*s as group elements,
    // witnessed by delete(R,j) ++ [s] ++ reverse(R) having length 0.
    bool found = false;
    for (std::size_t j = 0; j < r.size() && !found; ++j) {
      Word test;
      test.reserve(2 * r.size());
      for (std::size_t i = 0; i < r.size(); ++i)
        if (i != j) test.push_back(r[i]);
      test.push_back(s);
      for (std::size_t i = r.size(); i-- > 0;) test.push_back(r[i]);
      if (word_length(sys, test) == 0) {
        r.erase(r.begin() + static_cast<long>(j));
        found = true;
      }
    }
    if (!found) throw InternalError("reduce: exchange position not found");
  }
  return r;
}

Word left_descent_delete(const CoxeterSystem& sys, const Word& word, int a) {
  check_generator(sys, a);
  Block v = flat_simple_root(sys, a);
  for (std::size_t i = 0; i < word.size(); ++i) {
    flat_apply_letter(sys, v, word[i]);
    if (flat_vector_sign(sys, v) < 0) {
      Word r = word;
      r.erase(r.begin() + static_cast<long>(i));
      return r;
    }
  }
  throw UserError("left_descent_delete: not a left descent");
}

GroupElement canonical(std::shared_ptr<const CoxeterSystem> sys, Word word) {
  const CoxeterSystem& S = *sys;
  check_word(S, word);
  if (!word_is_reduced(S, word)) word = reduce(S, word);
  Word nf;
  nf.reserve(word.size());
  while (!word.empty()) {
    // Find the minimal left descent a, fused with the exchange scan: walking
    // delta = (s_1...s_i)^{-1}(alpha_a), the first negative position is the
    // deletion realizing a*w (for reduced words the sign never recovers).
    bool extracted = false;
    for (int a = 0; a < S.rank() && !extracted; ++a) {
      Block v = flat_simple_root(S, a);
      for (std::size_t i = 0; i < word.size(); ++i) {
        flat_apply_letter(S, v, word[i]);
        if (flat_vector_sign(S, v) < 0) {
          nf.push_back(a);
          word.erase(word.begin() + static_cast<long>(i));
          extracted = true;
          break;
        }
      }
    }
    if (!extracted)
      throw InternalError("canonical: nonempty reduced word without left descent");
  }
  return GroupElement::trusted_normal_form(std::move(sys), std::move(nf));
}

bool tits_is_reduced(const CoxeterSystem& sys, const Word& word, int bound) {
  check_word(sys, word);
  if (static_cast<int>(word.size()) > bound)
    throw UserError("tits_is_reduced: word length " + std::to_string(word.size()) +
                    " exceeds bound " + std::to_string(bound));
  auto has_adjacent_equal = [](const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] == w[i + 1]) return true;
    return false;
  };
  std::set<Word> seen;
  std::deque<Word> queue;
  seen.insert(word);
  queue.push_back(word);
  while (!queue.empty()) {
    Word w = std::move(queue.front());
    queue.pop_front();
    if (has_adjacent_equal(w)) return false;
    // All braid substitutions: an alternating run a b a b ... of length
    // m(a,b) starting at position i flips to the swapped run.
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      int a = w[i], b = w[i + 1];
      if (a == b) continue;
      int m = sys.bond_label(a, b);
      if (m == kInfiniteBond || i + static_cast<std::size_t>(m) > w.size()) continue;
      bool alternating = true;
      for (int k = 0; k < m; ++k)
        if (w[i + static_cast<std::size_t>(k)] != ((k % 2 == 0) ? a : b)) {
          alternating = false;
          break;
        }
      if (!alternating) continue;
      Word w2 = w;
      for (int k = 0; k < m; ++k)
        w2[i + static_cast<std::size_t>(k)] = (k % 2 == 0) ? b : a;
      if (seen.insert(w2).second) queue.push_back(std::move(w2));
    }
  }
  return true;
}

// ---- element-level operations ----

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  check_same_system(a, b);
  if (!a.system()) throw UserError("multiply: null system");
  Word w = a.word();
  w.insert(w.end(), b.word().begin(), b.word().end());
  return canonical(a.system(), std::move(w));
}

GroupElement inverse(const GroupElement& a) {
  if (!a.system()) throw UserError("inverse: null system");
  Word w(a.word().rbegin(), a.word().rend());
  // The reverse of a reduced word is reduced; canonical() skips its reduce.
  return canonical(a.system(), std::move(w));
}

std::vector<int> right_descents(const GroupElement& a) {
  std::vector<int> out;
  for (int s = 0; s < a.system()->rank(); ++s)
    if (is_right_descent_word(*a.system(), a.word(), s)) out.push_back(s);
  return out;
}

std::vector<int> left_descents(const GroupElement& a) {
  std::vector<int> out;
  for (int s = 0; s < a.system()->rank(); ++s)
    if (is_left_descent_word(*a.system(), a.word(), s)) out.push_back(s);
  return out;
}

std::vector<int> support(const GroupElement& a) {
  std::vector<int> out = a.word();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<GroupElement> predecessors(const GroupElement& a) {
  const CoxeterSystem& S = *a.system();
  const Word& w = a.word();
  std::set<GroupElement> out;
  for (std::size_t j = 0; j < w.size(); ++j) {
    Word d;
    d.reserve(w.size() - 1);
    for (std::size_t i = 0; i < w.size(); ++i)
      if (i != j) d.push_back(w[i]);
    if (!word_is_reduced(S, d)) continue;  // length dropped below l-1
    out.insert(canonical(a.system(), std::move(d)));
  }
  return {out.begin(), out.end()};
}

long predecessor_count(const GroupElement& a) {
  const CoxeterSystem& S = *a.system();
  const Word& w = a.word();
  long count = 0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    Word d;
    d.reserve(w.size() - 1);
    for (std::size_t i = 0; i < w.size(); ++i)
      if (i != j) d.push_back(w[i]);
    if (word_is_reduced(S, d)) ++count;
  }
  return count;
}

bool two_palindromic_quick(const GroupElement& a) {
  const CoxeterSystem& S = *a.system();
  const Word& w = a.word();
  const long supp = static_cast<long>(support(a).size());
  long count = 0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    Word d;
    d.reserve(w.size() - 1);
    for (std::size_t i = 0; i < w.size(); ++i)
      if (i != j) d.push_back(w[i]);
    if (word_is_reduced(S, d) && ++count > supp) return false;
  }
  return count == supp;
}

Word max_descent_word(const GroupElement& a) {
  const CoxeterSystem& S = *a.system();
  Word word = a.word();
  Word out;
  out.reserve(word.size());
  while (!word.empty()) {
    bool extracted = false;
    for (int c = S.rank(); c-- > 0 && !extracted;) {
      if (!is_left_descent_word(S, word, c)) continue;
      out.push_back(c);
      word = left_descent_delete(S, word, c);
      extracted = true;
    }
    if (!extracted)
      throw InternalError("max_descent_word: no left descent found");
  }
  return out;
}

// ---- RootMatrix ----

RootMatrix::RootMatrix(const CoxeterSystem& sys)
    : n_(sys.rank()), d_(sys.field->degree) {
  a_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_) *
                static_cast<std::size_t>(d_),
            Rational(0));
  for (int j = 0; j < n_; ++j)
    a_[static_cast<std::size_t>((j * n_ + j) * d_)] = 1;
}

void RootMatrix::right_multiply(const CoxeterSystem& sys, int s) {
  const int nd = n_ * d_;
  // Snapshot column s; then col_j -= 2B(alpha_j, alpha_s) * col_s for all j
  // bonded to s (including j = s, where the factor 2 flips the sign).
  std::vector<Rational> cs(a_.begin() + static_cast<long>(s) * nd,
                           a_.begin() + static_cast<long>(s + 1) * nd);
  for (int j : sys.neighbors[static_cast<std::size_t>(s)]) {
    const auto& b = sys.bond[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)];
    Rational* cj = a_.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(nd);
    if (b.kind == CoxeterSystem::BondScalar::Kind::rational) {
      for (int t = 0; t < nd; ++t)
        if (cs[static_cast<std::size_t>(t)] != 0)
          cj[t] -= b.r * cs[static_cast<std::size_t>(t)];
    } else {
      for (int i = 0; i < n_; ++i)
        fieldops::sub_mul_span(*sys.field, cj + i * d_, b.c.data(),
                               cs.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(d_));
    }
  }
}

void RootMatrix::left_multiply(const CoxeterSystem& sys, int s) {
  const int nd = n_ * d_;
  std::vector<Rational> acc(static_cast<std::size_t>(d_));
  for (int j = 0; j < n_; ++j) {
    Rational* cj = a_.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(nd);
    for (auto& x : acc) x = 0;
    for (int i : sys.neighbors[static_cast<std::size_t>(s)]) {
      const auto& b = sys.bond[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)];
      const Rational* ci = cj + i * d_;
      if (fieldops::is_zero_span(d_, ci)) continue;
      if (b.kind == CoxeterSystem::BondScalar::Kind::rational)
        fieldops::add_scaled_span(d_, acc.data(), ci, b.r);
      else
        fieldops::acc_mul_span(*sys.field, acc.data(), b.c.data(), ci);
    }
    fieldops::sub_span(d_, cj + s * d_, acc.data());
  }
}

int RootMatrix::column_sign(const CoxeterSystem& sys, int j) const {
  const int nd = n_ * d_;
  const Rational* cj = a_.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(nd);
  bool pos = false, neg = false;
  for (int i = 0; i < n_; ++i) {
    int s = fieldops::sign_span(*sys.field, cj + i * d_);
    if (s > 0) pos = true;
    if (s < 0) neg = true;
  }
  if (pos && neg)
    throw InternalError("representation matrix column with mixed signs");
  if (!pos && !neg) throw InternalError("zero representation matrix column");
  return pos ? 1 : -1;
}

std::size_t RootMatrix::hash() const {
  std::size_t h = 0xcbf29ce4;
  for (const auto& x : a_) hash_combine(h, hash_rational(x));
  return h;
}

// ---- breadth-first enumeration ----

std::vector<std::vector<GroupElement>> bfs_levels(
    std::shared_ptr<const CoxeterSystem> sys, int max_length, std::size_t cap) {
  const CoxeterSystem& S = *sys;
  struct Node {
    RootMatrix m;
    Word nf;
  };
  std::vector<std::vector<GroupElement>> out;
  out.push_back({GroupElement::identity(sys)});
  std::vector<Node> cur;
  cur.push_back({RootMatrix(S), {}});

  for (int len = 1; len <= max_length && !cur.empty(); ++len) {
    std::vector<Node> next;
    std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
    for (const auto& node : cur) {
      for (int s = 0; s < S.rank(); ++s) {
        if (node.m.column_sign(S, s) < 0) continue;  // descent: already seen
        RootMatrix m2 = node.m;
        m2.right_multiply(S, s);
        Word w2 = node.nf;
        w2.push_back(s);
        std::size_t h = m2.hash();
        auto& idxs = buckets[h];
        bool merged = false;
        for (std::size_t idx : idxs) {
          if (next[idx].m == m2) {
            // ShortLex normal form = min over all discovery edges.
            if (w2 < next[idx].nf) next[idx].nf = std::move(w2);
            merged = true;
            break;
          }
        }
        if (!merged) {
          if (next.size() >= cap)
            throw CapExceeded("bfs_levels: level " + std::to_string(len) +
                              " exceeds cap " + std::to_string(cap));
          idxs.push_back(next.size());
          next.push_back(Node{std::move(m2), std::move(w2)});
        }
      }
    }
    std::sort(next.begin(), next.end(),
              [](const Node& x, const Node& y) { return x.nf < y.nf; });
    std::vector<GroupElement> level;
    level.reserve(next.size());
    for (const auto& nd : next)
      level.push_back(GroupElement::trusted_normal_form(sys, nd.nf));
    if (!level.empty()) out.push_back(std::move(level));
    cur = std::move(next);
  }
  return out;
}

}  // namespace coxsmooth
