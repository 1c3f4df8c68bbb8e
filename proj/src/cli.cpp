#include "coxsmooth/cli.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coxsmooth/bruhat.hpp"
#include "coxsmooth/census.hpp"
#include "coxsmooth/coxeter.hpp"
#include "coxsmooth/element.hpp"
#include "coxsmooth/errors.hpp"
#include "coxsmooth/fixtures.hpp"
#include "coxsmooth/numeric.hpp"
#include "coxsmooth/qpoly.hpp"
#include "coxsmooth/series.hpp"
#include "coxsmooth/smoothness.hpp"

namespace coxsmooth::cli {
namespace {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Rendering helpers
// ---------------------------------------------------------------------------

long long json_int(const Integer& z) {
  if (!z.fits_slong_p())
    throw InternalError("integer too large for JSON output: " + z.get_str());
  return static_cast<long long>(z.get_si());
}

ordered_json poly_json(const QPolynomial& p) {
  ordered_json arr = ordered_json::array();
  for (const Integer& c : p.coefficients()) arr.push_back(json_int(c));
  return arr;
}

std::string coeffs_text(const QPolynomial& p) {
  std::string s;
  for (const Integer& c : p.coefficients()) {
    if (!s.empty()) s += ' ';
    s += c.get_str();
  }
  return s.empty() ? "0" : s;
}

std::string names_text(const CoxeterSystem& sys, const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += sys.generator_name(w[i]);
  }
  return s;
}

ordered_json names_json(const CoxeterSystem& sys, const Word& w) {
  ordered_json arr = ordered_json::array();
  for (int g : w) arr.push_back(sys.generator_name(g));
  return arr;
}

std::string set_text(const CoxeterSystem& sys, const std::vector<int>& gens) {
  std::string s = "{";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) s += ", ";
    s += sys.generator_name(gens[i]);
  }
  return s + "}";
}

std::string bond_text(int label) {
  return label == kInfiniteBond ? std::string("inf") : std::to_string(label);
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string generator_list(const CoxeterSystem& sys) {
  std::string s;
  for (std::size_t i = 0; i < sys.rank(); ++i) {
    if (i) s += ", ";
    s += sys.generator_name(static_cast<int>(i));
  }
  return s;
}

Word parse_word_text(const CoxeterSystem& sys, const std::string& text) {
  Word w;
  for (const std::string& tok : split_tokens(text)) {
    int idx = sys.generator_index(tok);
    if (idx < 0)
      throw UserError("unknown generator '" + tok + "'; generators of " +
                      sys.name + " are: " + generator_list(sys));
    w.push_back(idx);
  }
  return w;
}

std::vector<int> parse_generator_set(const CoxeterSystem& sys,
                                     const std::string& text) {
  Word w = parse_word_text(sys, text);
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

std::pair<int, int> parse_range(const std::string& text,
                                const std::string& flag) {
  auto bad = [&] {
    return UserError("malformed " + flag + " '" + text +
                     "': expected LO:HI or a single integer");
  };
  std::string lo = text, hi = text;
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    lo = text.substr(0, colon);
    hi = text.substr(colon + 1);
  }
  try {
    std::size_t used = 0;
    int a = std::stoi(lo, &used);
    if (used != lo.size()) throw bad();
    int b = std::stoi(hi, &used);
    if (used != hi.size()) throw bad();
    if (a > b) throw UserError("empty " + flag + " '" + text + "' (LO > HI)");
    return {a, b};
  } catch (const UserError&) {
    throw;
  } catch (const std::exception&) {
    throw bad();
  }
}

int parse_bond_argument(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo")
    return kInfiniteBond;
  try {
    std::size_t used = 0;
    int m = std::stoi(text, &used);
    if (used != text.size() || m < 2)
      throw UserError("--m must be an integer >= 2 or 'inf', got '" + text +
                      "'");
    return m;
  } catch (const UserError&) {
    throw;
  } catch (const std::exception&) {
    throw UserError("--m must be an integer >= 2 or 'inf', got '" + text +
                    "'");
  }
}

const char* tag_name(VFactorTag tag) {
  switch (tag) {
    case VFactorTag::RankLE2:
      return "rank_le_2";
    case VFactorTag::Case1:
      return "case1";
    case VFactorTag::Case2:
      return "case2";
    case VFactorTag::Case3:
      return "case3_spiral";
  }
  return "unknown";
}

ordered_json class_json(const CoxeterSystem& sys, const VFactorClass& cls) {
  ordered_json j;
  j["tag"] = tag_name(cls.tag);
  j["length"] = cls.length;
  if (cls.rst[0] >= 0) {
    ordered_json gens = ordered_json::array();
    for (int g : cls.rst) gens.push_back(sys.generator_name(g));
    j["generators"] = gens;
  }
  if (cls.tag == VFactorTag::Case1 || cls.tag == VFactorTag::Case2)
    j["m_st"] = cls.m_st;
  return j;
}

std::string class_text(const CoxeterSystem& sys, const VFactorClass& cls) {
  std::string s = tag_name(cls.tag);
  s += "(length " + std::to_string(cls.length);
  if (cls.rst[0] >= 0) {
    s += ", generators ";
    for (std::size_t i = 0; i < cls.rst.size(); ++i) {
      if (i) s += ' ';
      s += sys.generator_name(cls.rst[i]);
    }
  }
  if (cls.tag == VFactorTag::Case1 || cls.tag == VFactorTag::Case2)
    s += ", m_st " + std::to_string(cls.m_st);
  return s + ")";
}

ordered_json step_json(const CoxeterSystem& sys, const GrassmannianStep& st) {
  ordered_json j;
  ordered_json jj = ordered_json::array();
  for (int g : st.J) jj.push_back(sys.generator_name(g));
  j["J"] = jj;
  j["u"] = names_json(sys, st.u.word());
  j["v"] = names_json(sys, st.v.word());
  j["v_length"] = st.v.length();
  j["bp_lemma"] = st.bp_verified;
  if (st.v_class.has_value()) {
    j["class"] = class_json(sys, *st.v_class);
    j["relative_closed_form"] = poly_json(closed_form_relative(*st.v_class));
  }
  return j;
}

void print_defect(std::ostream& out, const std::optional<long>& defect) {
  if (!defect.has_value()) {
    out << "palindromic: yes\n";
  } else {
    out << "palindromic: no\n";
    out << "defect: " << *defect << " (" << *defect << "-palindromic, not "
        << (*defect + 1) << "-palindromic)\n";
  }
}

ordered_json defect_json(const std::optional<long>& defect) {
  if (!defect.has_value()) return nullptr;
  return *defect;
}

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

// Peels Grassmannian steps front-first until the identity (or until no step
// qualifies), returning the factors in chain order v_1, ..., v_k where
// factors[i].u is the prefix v_1 ... v_i.  Unlike fast_poincare this applies
// to any element and performs no BP or classification checks.
std::pair<std::vector<GrassmannianStep>, bool> plain_chain(
    const GroupElement& w) {
  std::vector<GrassmannianStep> steps;
  GroupElement cur = w;
  bool complete = true;
  while (!cur.is_identity()) {
    std::vector<GrassmannianStep> all = grassmannian_factorizations(cur);
    if (all.empty()) {
      complete = false;
      break;
    }
    steps.push_back(std::move(all.front()));
    cur = steps.back().u;
  }
  std::reverse(steps.begin(), steps.end());
  return {std::move(steps), complete};
}

// ---------------------------------------------------------------------------
// Subcommand: group-check
// ---------------------------------------------------------------------------

struct GroupCheckOpts {
  std::string group_file;
  bool as_json = false;
};

void cmd_group_check(const GroupCheckOpts& o, std::ostream& out) {
  auto sys = parse_group_file(o.group_file);
  const TriangleReport rep = triangle_scan(*sys);

  std::optional<long> bound;
  if (rep.palindromic_set_finite.value_or(false))
    bound = static_cast<long>(sys->rank()) *
            (rep.max_finite_bond.value_or(0) + 3);

  if (o.as_json) {
    ordered_json j;
    j["group"] = sys->name;
    j["rank"] = sys->rank();
    ordered_json gens = ordered_json::array();
    for (std::size_t i = 0; i < sys->rank(); ++i)
      gens.push_back(sys->generator_name(static_cast<int>(i)));
    j["generators"] = gens;
    j["avoids_hecke_triangles"] = rep.avoids_hecke_triangles;
    ordered_json wit = ordered_json::array();
    for (const auto& t : rep.hecke_triangles) {
      ordered_json one;
      one["generators"] = ordered_json::array(
          {sys->generator_name(t[0]), sys->generator_name(t[1]),
           sys->generator_name(t[2])});
      one["bonds"] = ordered_json::array({bond_text(sys->bond_label(t[0], t[1])),
                                          bond_text(sys->bond_label(t[0], t[2])),
                                          bond_text(sys->bond_label(t[1], t[2]))});
      wit.push_back(one);
    }
    j["hecke_triangles"] = wit;
    j["contains_333"] = rep.contains_333;
    j["contains_33c_finite"] = rep.contains_33c_finite;
    j["has_infinite_bond"] = rep.has_infinite_bond;
    j["max_finite_bond"] = rep.max_finite_bond.has_value()
                               ? ordered_json(*rep.max_finite_bond)
                               : ordered_json(nullptr);
    j["palindromic_set_finite"] =
        rep.palindromic_set_finite.has_value()
            ? ordered_json(*rep.palindromic_set_finite)
            : ordered_json(nullptr);
    j["palindromic_length_bound"] =
        bound.has_value() ? ordered_json(*bound) : ordered_json(nullptr);
    emit(out, j);
    return;
  }

  out << "group: " << sys->name << " (rank " << sys->rank() << ")\n";
  out << "generators: " << generator_list(*sys) << "\n";
  out << "avoids hecke triangles (2,b,c): "
      << (rep.avoids_hecke_triangles ? "yes" : "no") << "\n";
  if (!rep.hecke_triangles.empty()) {
    out << "hecke triangle witnesses:\n";
    for (const auto& t : rep.hecke_triangles) {
      out << "  {" << sys->generator_name(t[0]) << ", "
          << sys->generator_name(t[1]) << ", " << sys->generator_name(t[2])
          << "} with bonds (" << bond_text(sys->bond_label(t[0], t[1])) << ", "
          << bond_text(sys->bond_label(t[0], t[2])) << ", "
          << bond_text(sys->bond_label(t[1], t[2])) << ")\n";
    }
  }
  out << "contains a (3,3,3) triple: " << (rep.contains_333 ? "yes" : "no")
      << "\n";
  out << "contains a (3,3,c) triple, 3 < c finite: "
      << (rep.contains_33c_finite ? "yes" : "no") << "\n";
  out << "has an infinite bond: " << (rep.has_infinite_bond ? "yes" : "no")
      << "\n";
  out << "max finite bond: "
      << (rep.max_finite_bond.has_value()
              ? std::to_string(*rep.max_finite_bond)
              : std::string("none"))
      << "\n";
  if (!rep.palindromic_set_finite.has_value()) {
    out << "palindromic set: not classified (group contains a hecke "
           "triangle)\n";
  } else if (*rep.palindromic_set_finite) {
    out << "palindromic set: finite; every palindromic element has length < "
        << *bound << " = " << sys->rank() << " * ("
        << rep.max_finite_bond.value_or(0) << " + 3)\n";
  } else {
    out << "palindromic set: infinite ("
        << (rep.has_infinite_bond ? "contains an infinite bond"
                                  : "contains a (3,3,3) triple")
        << ")\n";
  }
}

// ---------------------------------------------------------------------------
// Subcommand: poincare
// ---------------------------------------------------------------------------

struct PoincareOpts {
  std::string group_file;
  std::string word_text;
  std::string relative_text;
  bool fast = false;
  bool verify = false;
  std::size_t cap = kDefaultIntervalCap;
  bool as_json = false;
};

void cmd_poincare(const PoincareOpts& o, std::ostream& out) {
  if (o.verify && !o.fast) throw UserError("--verify requires --fast");
  if (o.fast && !o.relative_text.empty())
    throw UserError("--fast cannot be combined with --relative");

  auto sys = parse_group_file(o.group_file);
  const Word input = parse_word_text(*sys, o.word_text);
  const GroupElement w = canonical(sys, input);

  ordered_json j;
  j["group"] = sys->name;
  j["input_word"] = names_json(*sys, input);
  j["canonical_word"] = names_json(*sys, w.word());
  j["length"] = w.length();

  QPolynomial poly;
  std::optional<long> defect;
  const FactorizationChain* chain_ptr = nullptr;
  FactorizationChain chain;

  if (!o.relative_text.empty()) {
    const std::vector<int> J = parse_generator_set(*sys, o.relative_text);
    poly = relative_poincare(w, J, o.cap);
    defect = palindromic_defect(poly);
    ordered_json jj = ordered_json::array();
    for (int g : J) jj.push_back(sys->generator_name(g));
    j["relative_to"] = jj;
    j["method"] = "interval";
  } else if (o.fast) {
    chain = fast_poincare(w);
    chain_ptr = &chain;
    poly = chain.closed_form;
    defect = palindromic_defect(poly);
    j["method"] = "closed-form";
    if (o.verify) {
      const QPolynomial brute = poincare(w, o.cap);
      if (!(brute == poly))
        throw TheoremViolation(
            "--verify: closed-form polynomial disagrees with the interval "
            "polynomial for '" +
            w.to_string() + "' (closed form " + poly.to_string() +
            ", interval " + brute.to_string() + ")");
      j["verified"] = true;
    }
  } else {
    const PalindromicityProfile prof = palindromicity_profile(w, o.cap);
    poly = prof.poincare;
    defect = prof.defect;
    j["method"] = "interval";
  }

  j["coefficients"] = poly_json(poly);
  j["polynomial"] = poly.to_string();
  j["palindromic"] = !defect.has_value();
  j["defect"] = defect_json(defect);
  if (chain_ptr != nullptr) {
    ordered_json steps = ordered_json::array();
    for (const GrassmannianStep& st : chain_ptr->factors)
      steps.push_back(step_json(*sys, st));
    j["chain"] = steps;
  }

  if (o.as_json) {
    emit(out, j);
    return;
  }

  out << "group: " << sys->name << "\n";
  out << "word: " << names_text(*sys, input) << "\n";
  out << "canonical: " << w.to_string() << "\n";
  out << "length: " << w.length() << "\n";
  if (!o.relative_text.empty())
    out << "relative to J = "
        << set_text(*sys, parse_generator_set(*sys, o.relative_text)) << "\n";
  out << "method: " << j["method"].get<std::string>() << "\n";
  if (chain_ptr != nullptr) {
    out << "factorization chain:\n";
    int i = 0;
    for (const GrassmannianStep& st : chain_ptr->factors) {
      ++i;
      out << "  factor " << i << ": v = " << st.v.to_string() << "  (J = "
          << set_text(*sys, st.J) << ", class "
          << (st.v_class ? class_text(*sys, *st.v_class)
                         : std::string("unclassified"))
          << ")\n";
      if (st.v_class)
        out << "            relative P = "
            << closed_form_relative(*st.v_class).to_string() << "\n";
    }
  }
  out << "P = " << poly.to_string() << "\n";
  out << "coefficients: " << coeffs_text(poly) << "\n";
  print_defect(out, defect);
  if (o.verify) out << "closed form matches interval polynomial: yes\n";
}

// ---------------------------------------------------------------------------
// Subcommand: factorize
// ---------------------------------------------------------------------------

struct FactorizeOpts {
  std::string group_file;
  std::string word_text;
  std::size_t cap = kDefaultIntervalCap;
  bool as_json = false;
};

void cmd_factorize(const FactorizeOpts& o, std::ostream& out) {
  auto sys = parse_group_file(o.group_file);
  const Word input = parse_word_text(*sys, o.word_text);
  const GroupElement w = canonical(sys, input);
  const TriangleReport rep = triangle_scan(*sys);
  const bool quick2 = two_palindromic_quick(w);
  const bool theorem_applies = rep.avoids_hecke_triangles && quick2;

  bool all_bonds_ge_3 = true;
  for (std::size_t i = 0; i < sys->rank() && all_bonds_ge_3; ++i)
    for (std::size_t k = i + 1; k < sys->rank(); ++k)
      if (sys->bond_label(static_cast<int>(i), static_cast<int>(k)) == 2) {
        all_bonds_ge_3 = false;
        break;
      }

  std::vector<GrassmannianStep> steps;
  bool complete = true;
  std::optional<QPolynomial> closed;
  if (theorem_applies) {
    FactorizationChain chain = fast_poincare(w);
    steps = std::move(chain.factors);
    closed = std::move(chain.closed_form);
  } else {
    auto got = plain_chain(w);
    steps = std::move(got.first);
    complete = got.second;
  }

  std::optional<std::vector<GroupElement>> blocks;
  if (all_bonds_ge_3 && quick2 && complete)
    blocks = separable_factorization(w, o.cap);

  if (o.as_json) {
    ordered_json j;
    j["group"] = sys->name;
    j["input_word"] = names_json(*sys, input);
    j["canonical_word"] = names_json(*sys, w.word());
    j["length"] = w.length();
    j["avoids_hecke_triangles"] = rep.avoids_hecke_triangles;
    j["two_palindromic"] = quick2;
    j["chain_complete"] = complete;
    ordered_json st = ordered_json::array();
    for (const GrassmannianStep& s : steps) st.push_back(step_json(*sys, s));
    j["chain"] = st;
    j["closed_form"] =
        closed.has_value() ? poly_json(*closed) : ordered_json(nullptr);
    if (blocks.has_value()) {
      ordered_json bl = ordered_json::array();
      for (const GroupElement& b : *blocks)
        bl.push_back(names_json(*sys, b.word()));
      j["separable_blocks"] = bl;
    } else {
      j["separable_blocks"] = nullptr;
    }
    emit(out, j);
    return;
  }

  out << "group: " << sys->name << "\n";
  out << "word: " << names_text(*sys, input) << "\n";
  out << "canonical: " << w.to_string() << "\n";
  out << "length: " << w.length() << "\n";
  out << "avoids hecke triangles: "
      << (rep.avoids_hecke_triangles ? "yes" : "no") << "\n";
  out << "2-palindromic (|pred| = |supp|): " << (quick2 ? "yes" : "no")
      << "\n";
  if (steps.empty() && w.is_identity()) {
    out << "chain: empty (identity element)\n";
  } else {
    out << "chain" << (complete ? "" : " (incomplete: no qualifying step)")
        << ":\n";
    int i = 0;
    for (const GrassmannianStep& s : steps) {
      ++i;
      out << "  factor " << i << ": v = " << s.v.to_string() << "  (J = "
          << set_text(*sys, s.J) << ", bp-lemma "
          << (s.bp_verified ? "yes" : "no");
      if (s.v_class) out << ", class " << class_text(*sys, *s.v_class);
      out << ")\n";
    }
  }
  if (closed.has_value()) {
    out << "closed-form P = " << closed->to_string() << "\n";
    out << "coefficients: " << coeffs_text(*closed) << "\n";
  }
  if (blocks.has_value()) {
    out << "separable blocks:";
    if (blocks->empty()) out << " (none: identity)";
    for (const GroupElement& b : *blocks) out << "  [" << b.to_string() << "]";
    out << "\n";
  }
}

// ---------------------------------------------------------------------------
// Subcommand: census
// ---------------------------------------------------------------------------

struct CensusOpts {
  std::string group_file;
  int max_length = 0;
  std::string mode_text = "palindromic";
  bool list = false;
  std::size_t cap = kDefaultLevelCap;
  bool as_json = false;
};

CensusMode parse_mode(const std::string& text) {
  if (text == "palindromic") return CensusMode::palindromic;
  if (text == "two-palindromic" || text == "two_palindromic")
    return CensusMode::two_palindromic;
  throw UserError("unknown --mode '" + text +
                  "'; expected 'palindromic' or 'two-palindromic'");
}

void cmd_census(const CensusOpts& o, std::ostream& out) {
  auto sys = parse_group_file(o.group_file);
  if (o.max_length < 0) throw UserError("--max-length must be >= 0");
  const CensusMode mode = parse_mode(o.mode_text);
  const CensusReport rep =
      palindromic_census(sys, o.max_length, mode, o.list, o.cap);

  if (o.as_json) {
    ordered_json j;
    j["group"] = rep.system_name;
    j["max_length"] = rep.max_length;
    j["mode"] = (mode == CensusMode::palindromic ? "palindromic"
                                                 : "two-palindromic");
    j["counts_by_length"] = rep.counts_by_length;
    j["total"] = rep.total;
    if (o.list) {
      ordered_json els = ordered_json::array();
      for (const GroupElement& g : rep.elements)
        els.push_back(names_json(*sys, g.word()));
      j["elements"] = els;
    }
    emit(out, j);
    return;
  }

  out << "group: " << rep.system_name << "\n";
  out << "mode: "
      << (mode == CensusMode::palindromic ? "palindromic" : "two-palindromic")
      << "\n";
  out << "max length: " << rep.max_length << "\n";
  for (std::size_t l = 0; l < rep.counts_by_length.size(); ++l)
    out << "  length " << std::setw(3) << l << ": "
        << rep.counts_by_length[l] << "\n";
  out << "total: " << rep.total << "\n";
  if (o.list) {
    out << "elements:\n";
    for (const GroupElement& g : rep.elements)
      out << "  " << g.to_string() << "\n";
  }
}

// ---------------------------------------------------------------------------
// Subcommand: series
// ---------------------------------------------------------------------------

struct SeriesOpts {
  std::string m_text;
  std::size_t q_order = kDefaultQOrder;
  std::size_t t_order = kDefaultTOrder;
  bool as_json = false;
};

void cmd_series(const SeriesOpts& o, std::ostream& out) {
  const int m = parse_bond_argument(o.m_text);
  if (o.q_order == 0 || o.t_order == 0)
    throw UserError("--q-order and --t-order must be >= 1");
  const BivariateSeries Phi = Phi_series(m, o.q_order, o.t_order);

  std::vector<QPolynomial> rows;
  for (std::size_t n = 0; n < o.t_order; ++n)
    rows.push_back(Phi.t_slice_times_factorial(n));

  if (o.as_json) {
    ordered_json j;
    j["m"] = (m == kInfiniteBond) ? ordered_json("inf") : ordered_json(m);
    j["q_order"] = o.q_order;
    j["t_order"] = o.t_order;
    ordered_json rj = ordered_json::array();
    for (std::size_t n = 0; n < rows.size(); ++n) {
      ordered_json one;
      one["n"] = n;
      one["coefficients"] = poly_json(rows[n]);
      rj.push_back(one);
    }
    j["palindromic_counts"] = rj;
    emit(out, j);
    return;
  }

  out << "generating function of palindromic counts, m = " << bond_text(m)
      << " (q-order " << o.q_order << ", t-order " << o.t_order << ")\n";
  out << "row n lists the palindromic elements of the rank-n group by "
         "length (n! times the t^n coefficient)\n";
  for (std::size_t n = 0; n < rows.size(); ++n)
    out << "  n=" << n << ": " << coeffs_text(rows[n]) << "\n";
}

// ---------------------------------------------------------------------------
// Subcommand: figure3
// ---------------------------------------------------------------------------

struct TableOpts {
  std::string m_range = "4:8";
  std::string n_range = "1:7";
  bool csv = false;
  bool as_json = false;
};

void cmd_figure3(const TableOpts& o, std::ostream& out) {
  const auto [m_lo, m_hi] = parse_range(o.m_range, "--m-range");
  const auto [n_lo, n_hi] = parse_range(o.n_range, "--n-range");
  const std::vector<std::vector<Integer>> table =
      figure3_table(m_lo, m_hi, n_lo, n_hi);

  if (o.as_json) {
    ordered_json j;
    j["m_range"] = ordered_json::array({m_lo, m_hi});
    j["n_range"] = ordered_json::array({n_lo, n_hi});
    ordered_json rows = ordered_json::array();
    for (int m = m_lo; m <= m_hi; ++m) {
      ordered_json one;
      one["m"] = m;
      ordered_json counts = ordered_json::array();
      for (const Integer& z : table[static_cast<std::size_t>(m - m_lo)])
        counts.push_back(json_int(z));
      one["totals"] = counts;
      rows.push_back(one);
    }
    j["rows"] = rows;
    emit(out, j);
    return;
  }

  if (o.csv) {
    out << "m";
    for (int n = n_lo; n <= n_hi; ++n) out << "," << n;
    out << "\n";
    for (int m = m_lo; m <= m_hi; ++m) {
      out << m;
      for (const Integer& z : table[static_cast<std::size_t>(m - m_lo)])
        out << "," << z.get_str();
      out << "\n";
    }
    return;
  }

  out << "total palindromic elements of the rank-n group with all bonds m\n";
  out << std::setw(4) << "m\\n";
  for (int n = n_lo; n <= n_hi; ++n) out << std::setw(12) << n;
  out << "\n";
  for (int m = m_lo; m <= m_hi; ++m) {
    out << std::setw(4) << m;
    for (const Integer& z : table[static_cast<std::size_t>(m - m_lo)])
      out << std::setw(12) << z.get_str();
    out << "\n";
  }
}

// ---------------------------------------------------------------------------
// Subcommand: selfcheck
// ---------------------------------------------------------------------------

struct TaylorRow {
  int m;  // kInfiniteBond for the infinite-bond series
  std::size_t n;
  std::vector<long> printed;  // expected coefficients, ascending
  bool complete;                   // no tail beyond the printed window
  std::vector<std::size_t> flagged;  // positions excluded from hard comparison
};

const std::vector<TaylorRow>& taylor_rows() {
  static const std::vector<TaylorRow> rows = {
      {3, 0, {1}, false, {}},
      {3, 1, {1, 1}, false, {}},
      {3, 2, {1, 2, 2, 1}, false, {}},
      {3, 3, {1, 3, 6, 9, 6, 6, 0, 6, 0}, false, {6, 8}},
      {3, 4, {1, 4, 12, 30, 48, 60, 54}, false, {}},
      {4, 0, {1}, true, {}},
      {4, 1, {1, 1}, true, {}},
      {4, 2, {1, 2, 2, 2, 1}, true, {}},
      {4, 3, {1, 3, 6, 12, 15, 12, 12, 6}, true, {}},
      {4, 4, {1, 4, 12, 36, 78, 120, 156, 168, 150, 120, 48}, true, {}},
      {kInfiniteBond, 2, {1, 2, 2, 2, 2, 2}, false, {}},
      {kInfiniteBond, 3, {1, 3, 6, 12, 18, 24}, false, {}},
      {kInfiniteBond, 4, {1, 4, 12, 36, 84, 156}, false, {}},
  };
  return rows;
}

constexpr long kFigure3Expected[5][7] = {
    {2, 8, 67, 893, 15596, 330082, 8165963},
    {2, 10, 115, 2057, 47356, 1314292, 42584795},
    {2, 12, 175, 3893, 110436, 3768982, 150113447},
    {2, 14, 247, 6545, 219956, 8884312, 418725119},
    {2, 16, 331, 10157, 393916, 18351562, 997538291},
};

bool poly_equals(const QPolynomial& p, const std::vector<long>& want) {
  if (p.coefficients().size() != want.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i)
    if (p.coeff(i) != Integer(want[i])) return false;
  return true;
}

int cmd_selfcheck(std::ostream& out) {
  int passed = 0;
  int failed = 0;
  auto check = [&](const std::string& name, const std::function<void()>& fn) {
    try {
      fn();
      out << "ok - " << name << "\n";
      ++passed;
    } catch (const std::exception& e) {
      out << "FAIL - " << name << ": " << e.what() << "\n";
      ++failed;
    }
  };
  auto expect = [](bool cond, const std::string& msg) {
    if (!cond) throw UserError(msg);
  };

  const auto clique4 = fixtures::make_clique4();
  const std::vector<long> ex1_poly = {1, 4, 9,  15, 20, 22,
                                           20, 15, 9, 4,  1};
  const std::vector<long> ex2_poly = {1, 3, 6, 10, 14, 17,
                                           17, 15, 11, 6, 3, 1};
  const GroupElement ex1 = canonical(clique4, {0, 1, 0, 2, 1, 0, 2, 1, 0, 3});
  const GroupElement ex2 = canonical(clique4, {1, 3, 1, 3, 0, 1, 3, 0, 1, 3, 1});

  check("interval polynomial of the length-10 rank-4 example", [&] {
    const PalindromicityProfile prof = palindromicity_profile(ex1);
    expect(poly_equals(prof.poincare, ex1_poly),
           "polynomial mismatch: got " + prof.poincare.to_string());
    expect(prof.palindromic(), "expected a palindromic polynomial");
    expect(prof.poincare.evaluate_at_one() == 120,
           "expected 120 elements below the apex");
  });

  check("closed-form factorization matches the interval (length-10 example)",
        [&] {
          const FactorizationChain chain = fast_poincare(ex1);
          expect(poly_equals(chain.closed_form, ex1_poly),
                 "closed form mismatch: got " + chain.closed_form.to_string());
        });

  check("interval polynomial and defect of the length-11 rank-3-support "
        "example",
        [&] {
          const PalindromicityProfile prof = palindromicity_profile(ex2);
          expect(poly_equals(prof.poincare, ex2_poly),
                 "polynomial mismatch: got " + prof.poincare.to_string());
          expect(prof.defect.has_value() && *prof.defect == 3,
                 "expected defect 3");
        });

  check("closed-form factorization matches the interval (length-11 example)",
        [&] {
          const FactorizationChain chain = fast_poincare(ex2);
          expect(poly_equals(chain.closed_form, ex2_poly),
                 "closed form mismatch: got " + chain.closed_form.to_string());
        });

  check("separable factorization of the two-block example", [&] {
    const GroupElement w = canonical(clique4, {3, 1, 3, 1, 2, 0, 2});
    const std::vector<GroupElement> blocks = separable_factorization(w);
    expect(blocks.size() == 2, "expected exactly two blocks");
    expect(blocks[0] == canonical(clique4, {1, 3, 1, 3}),
           "first block mismatch: " + blocks[0].to_string());
    expect(blocks[1] == canonical(clique4, {0, 2, 0}),
           "second block mismatch: " + blocks[1].to_string());
  });

  check("right-angled triangle witness (2,3,4): closed form and interval",
        [&] {
          const HeckeWitness hw = hecke_witness(3, 4);
          const std::vector<long> want = {1, 3, 5, 7, 6, 3, 1};
          expect(poly_equals(hw.closed_form, want),
                 "closed form mismatch: got " + hw.closed_form.to_string());
          const QPolynomial brute = poincare(hw.w);
          expect(brute == hw.closed_form,
                 "interval polynomial disagrees: " + brute.to_string());
          const std::optional<long> d = palindromic_defect(hw.closed_form);
          expect(d.has_value() && *d == 2, "expected defect 2");
        });

  check("(2,3,5) sweep finds exactly one defect>=4 non-palindromic element, "
        "of length 14",
        [&] {
          const GroupElement g = find_h3_counterexample();
          expect(g.length() == 14,
                 "expected length 14, got " + std::to_string(g.length()));
        });

  check("(2,3,4) witness whose parabolic factorization is not BP", [&] {
    const NonBpWitness nb = non_bp_witness(3, 4);
    expect(!is_bp(nb.w, nb.J, BpMethod::lemma),
           "lemma criterion unexpectedly holds");
    expect(!is_bp(nb.w, nb.J, BpMethod::definition),
           "definition criterion unexpectedly holds");
    expect(palindromicity_profile(nb.w).palindromic(),
           "witness should be palindromic");
  });

  check("5x7 table of total palindromic counts", [&] {
    const auto table = figure3_table(4, 8, 1, 7);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t k = 0; k < 7; ++k)
        expect(table[i][k] == Integer(kFigure3Expected[i][k]),
               "mismatch at m=" + std::to_string(i + 4) +
                   ", n=" + std::to_string(k + 1) + ": got " +
                   table[i][k].get_str());
  });

  for (const TaylorRow& row : taylor_rows()) {
    const std::string label =
        "series m=" + bond_text(row.m) + ", coefficient row n=" +
        std::to_string(row.n);
    check(label, [&] {
      const std::size_t q_order = 16;
      const BivariateSeries Phi = Phi_series(row.m, q_order, row.n + 1);
      const QPolynomial slice = Phi.t_slice_times_factorial(row.n);
      for (std::size_t i = 0; i < row.printed.size(); ++i) {
        if (std::find(row.flagged.begin(), row.flagged.end(), i) !=
            row.flagged.end())
          continue;
        expect(slice.coeff(i) == Integer(row.printed[i]),
               "coefficient of q^" + std::to_string(i) + " is " +
                   slice.coeff(i).get_str() + ", expected " +
                   std::to_string(row.printed[i]));
      }
      if (row.complete)
        for (std::size_t i = row.printed.size(); i < q_order; ++i)
          expect(slice.coeff(i) == 0, "unexpected tail coefficient at q^" +
                                          std::to_string(i) + ": " +
                                          slice.coeff(i).get_str());
      for (std::size_t i : row.flagged) {
        if (slice.coeff(i) != Integer(row.printed[i]))
          out << "flag - " << label << ": computed q^" << i
              << " coefficient " << slice.coeff(i).get_str()
              << " differs from the printed value "
              << std::to_string(row.printed[i])
              << " (the census cross-check below decides)\n";
      }
    });
  }

  check("series row m=3, n=3 agrees with the brute-force census through "
        "length 8",
        [&] {
          const BivariateSeries Phi = Phi_series(3, 16, 4);
          const QPolynomial slice = Phi.t_slice_times_factorial(3);
          const CensusReport rep = palindromic_census(
              fixtures::make_uniform(3, 3), 8, CensusMode::palindromic);
          for (std::size_t l = 0; l + 1 <= 9; ++l)
            expect(slice.coeff(l) == Integer(rep.counts_by_length[l]),
                   "length " + std::to_string(l) + ": series " +
                       slice.coeff(l).get_str() + ", census " +
                       std::to_string(rep.counts_by_length[l]));
        });

  check("census of the all-bonds-4 rank-3 group through length 7", [&] {
    const std::vector<long> want = {1, 3, 6, 12, 15, 12, 12, 6};
    const CensusReport rep = palindromic_census(fixtures::make_uniform(4, 3),
                                                7, CensusMode::palindromic);
    expect(rep.counts_by_length == want, "length profile mismatch");
    expect(rep.total == 67, "expected 67 elements");
  });

  check("census of the all-bonds-5 rank-3 group matches its series row",
        [&] {
          const BivariateSeries Phi = Phi_series(5, 20, 4);
          const QPolynomial slice = Phi.t_slice_times_factorial(3);
          const std::size_t deg =
              slice.is_zero() ? 0 : static_cast<std::size_t>(slice.degree());
          expect(deg <= 12, "series degree unexpectedly large");
          const CensusReport rep =
              palindromic_census(fixtures::make_uniform(5, 3),
                                 static_cast<int>(deg),
                                 CensusMode::palindromic);
          for (std::size_t l = 0; l <= deg; ++l)
            expect(slice.coeff(l) == Integer(rep.counts_by_length[l]),
                   "length " + std::to_string(l) + ": series " +
                       slice.coeff(l).get_str() + ", census " +
                       std::to_string(rep.counts_by_length[l]));
          expect(rep.total == 115, "expected 115 elements");
        });

  check("census of the all-bonds-4 rank-4 group through length 10", [&] {
    const std::vector<long> want = {1,   4,   12,  36,  78, 120,
                                    156, 168, 150, 120, 48};
    const CensusReport rep = palindromic_census(fixtures::make_uniform(4, 4),
                                                10, CensusMode::palindromic);
    expect(rep.counts_by_length == want, "length profile mismatch");
    expect(rep.total == 893, "expected 893 elements");
  });

  out << "selfcheck: " << passed << "/" << (passed + failed) << " ok\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "exact Poincare polynomials, Bruhat intervals, palindromicity, "
      "closed-form factorizations, and palindromic censuses for Coxeter "
      "groups"};
  app.name("coxsmooth");
  app.require_subcommand(1);

  GroupCheckOpts gc;
  CLI::App* sc_gc = app.add_subcommand(
      "group-check", "classify a group's triangles and palindromic set");
  sc_gc->add_option("--group", gc.group_file, "group description file (JSON)")
      ->required();
  sc_gc->add_flag("--json", gc.as_json, "machine-readable output");

  PoincareOpts po;
  CLI::App* sc_po = app.add_subcommand(
      "poincare", "Poincare polynomial and palindromicity of an element");
  sc_po->add_option("--group", po.group_file, "group description file (JSON)")
      ->required();
  sc_po->add_option("--word", po.word_text,
                    "word in the generators (comma or space separated)")
      ->required();
  sc_po->add_option("--relative", po.relative_text,
                    "compute the relative polynomial P_w^J for this "
                    "generator subset J");
  sc_po->add_flag("--fast", po.fast,
                  "use the closed-form factorization (requires a "
                  "triangle-avoiding group and a 2-palindromic element)");
  sc_po->add_flag("--verify", po.verify,
                  "with --fast: also build the interval and assert equality");
  sc_po->add_option("--cap", po.cap, "interval size cap");
  sc_po->add_flag("--json", po.as_json, "machine-readable output");

  FactorizeOpts fa;
  CLI::App* sc_fa = app.add_subcommand(
      "factorize",
      "Grassmannian factorization chain and separable blocks of an element");
  sc_fa->add_option("--group", fa.group_file, "group description file (JSON)")
      ->required();
  sc_fa->add_option("--word", fa.word_text,
                    "word in the generators (comma or space separated)")
      ->required();
  sc_fa->add_option("--cap", fa.cap, "interval size cap");
  sc_fa->add_flag("--json", fa.as_json, "machine-readable output");

  CensusOpts ce;
  CLI::App* sc_ce = app.add_subcommand(
      "census", "count (2-)palindromic elements by length");
  sc_ce->add_option("--group", ce.group_file, "group description file (JSON)")
      ->required();
  sc_ce->add_option("--max-length", ce.max_length, "length cutoff")
      ->required();
  sc_ce->add_option("--mode", ce.mode_text,
                    "'palindromic' (default) or 'two-palindromic'");
  sc_ce->add_flag("--list", ce.list, "also list the elements found");
  sc_ce->add_option("--cap", ce.cap, "enumeration size cap");
  sc_ce->add_flag("--json", ce.as_json, "machine-readable output");

  SeriesOpts se;
  CLI::App* sc_se = app.add_subcommand(
      "series",
      "generating function of palindromic counts for uniform-bond groups");
  sc_se->add_option("--m", se.m_text, "bond label (integer >= 2 or 'inf')")
      ->required();
  sc_se->add_option("--q-order", se.q_order, "truncation order in q");
  sc_se->add_option("--t-order", se.t_order, "truncation order in t");
  sc_se->add_flag("--json", se.as_json, "machine-readable output");

  TableOpts f3;
  CLI::App* sc_f3 = app.add_subcommand(
      "figure3", "table of total palindromic counts for uniform-bond groups");
  sc_f3->add_option("--m-range", f3.m_range, "bond labels, LO:HI (default 4:8)");
  sc_f3->add_option("--n-range", f3.n_range, "ranks, LO:HI (default 1:7)");
  CLI::Option* f3_csv = sc_f3->add_flag("--csv", f3.csv, "CSV output");
  CLI::Option* f3_json =
      sc_f3->add_flag("--json", f3.as_json, "machine-readable output");
  f3_csv->excludes(f3_json);

  CLI::App* sc_sc = app.add_subcommand(
      "selfcheck", "replay every built-in reference value and report");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sc_gc->parsed()) {
      cmd_group_check(gc, out);
    } else if (sc_po->parsed()) {
      cmd_poincare(po, out);
    } else if (sc_fa->parsed()) {
      cmd_factorize(fa, out);
    } else if (sc_ce->parsed()) {
      cmd_census(ce, out);
    } else if (sc_se->parsed()) {
      cmd_series(se, out);
    } else if (sc_f3->parsed()) {
      cmd_figure3(f3, out);
    } else if (sc_sc->parsed()) {
      return cmd_selfcheck(out);
    }
    return 0;
  } catch (const TheoremViolation& e) {
    err << "theorem violation: " << e.what() << "\n";
    return 2;
  } catch (const UserError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace coxsmooth::cli
