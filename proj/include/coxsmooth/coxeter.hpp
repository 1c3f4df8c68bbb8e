#ifndef COXSMOOTH_COXETER_HPP
#define COXSMOOTH_COXETER_HPP

#include <array>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coxsmooth/cyclotomic.hpp"

namespace coxsmooth {

// Bond label for m_st = infinity.  Finite labels compare naturally below it.
inline constexpr int kInfiniteBond = std::numeric_limits<int>::max();

struct CoxeterMatrix {
  std::vector<std::string> names;
  // m[i][j]: 1 on the diagonal, >= 2 or kInfiniteBond off it, symmetric.
  std::vector<std::vector<int>> m;

  int rank() const { return static_cast<int>(names.size()); }
  // Throws UserError on any structural defect.
  void validate() const;
};

// A Coxeter system with its exact geometric representation: the field
// generated by all finite bond labels and the Gram-matrix scalars
// 2B(alpha_i, alpha_j) used by the reflection action.
class CoxeterSystem {
 public:
  // Scalar 2B(alpha_i, alpha_j) with a cheap dispatch tag: most bonds are
  // zero (commuting) or plain rationals, and the root-action inner loops
  // win a lot by not doing general field multiplications there.
  struct BondScalar {
    enum class Kind { zero, rational, general };
    Kind kind = Kind::zero;
    Rational r;           // valid when kind == rational
    fieldops::Coeffs c;   // valid when kind == general
  };

  std::string name;
  CoxeterMatrix matrix;
  std::shared_ptr<const FieldContext> field;
  std::vector<std::vector<BondScalar>> bond;
  // neighbors[s]: all j with bond[s][j] nonzero (includes s itself).
  std::vector<std::vector<int>> neighbors;

  int rank() const { return matrix.rank(); }
  int bond_label(int i, int j) const { return matrix.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  bool bond_finite(int i, int j) const { return bond_label(i, j) != kInfiniteBond; }
  const std::string& generator_name(int i) const { return matrix.names[static_cast<std::size_t>(i)]; }
  // -1 when the name is unknown.
  int generator_index(const std::string& name) const;
  CyclotomicReal bond_value(int i, int j) const;
};

// Builds the field and Gram scalars; validates the matrix.
std::shared_ptr<const CoxeterSystem> make_system(CoxeterMatrix matrix,
                                                 std::string name);

// JSON format: {"name": string, "generators": [string...],
//               "matrix": [[entry...]...]} with entry a positive integer or
// the string "inf".  Any structural defect raises UserError.
std::shared_ptr<const CoxeterSystem> parse_group(const std::string& json_text);
std::shared_ptr<const CoxeterSystem> parse_group_file(const std::string& path);

// Classification of all rank-3 standard parabolic bond triples.
// A "Hecke triangle" is a triple of labels (2, b, c) with b, c >= 3 and
// min(b, c) finite (as an unordered multiset); avoiding all of these is the
// hypothesis of the factorization theorem.
struct TriangleReport {
  bool avoids_hecke_triangles = true;
  // Generator index triples (i < j < k) whose labels match the pattern.
  std::vector<std::array<int, 3>> hecke_triangles;
  // Some triple has labels (3, 3, c) with 3 < c finite.
  bool contains_33c_finite = false;
  // Some triple has labels exactly (3, 3, 3).
  bool contains_333 = false;
  bool has_infinite_bond = false;
  // Largest finite off-diagonal label; empty when there is none.
  std::optional<int> max_finite_bond;
  // Defined only when avoids_hecke_triangles: the palindromic subset is
  // finite iff every bond is finite and no (3,3,3) triple occurs; elements
  // are then shorter than rank * (max_finite_bond + 3).
  std::optional<bool> palindromic_set_finite;
};

TriangleReport triangle_scan(const CoxeterSystem& sys);

}  // namespace coxsmooth

#endif
