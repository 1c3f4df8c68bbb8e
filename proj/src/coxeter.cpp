#include "coxsmooth/coxeter.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "coxsmooth/errors.hpp"

namespace coxsmooth {

void CoxeterMatrix::validate() const {
  const std::size_t n = names.size();
  if (n == 0) throw UserError("Coxeter matrix: no generators");
  std::set<std::string> seen;
  for (const auto& s : names) {
    if (s.empty()) throw UserError("Coxeter matrix: empty generator name");
    if (!seen.insert(s).second)
      throw UserError("Coxeter matrix: duplicate generator name '" + s + "'");
  }
  if (m.size() != n) throw UserError("Coxeter matrix: row count != rank");
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n)
      throw UserError("Coxeter matrix: row " + std::to_string(i) +
                      " has wrong length");
    if (m[i][i] != 1)
      throw UserError("Coxeter matrix: diagonal entry m(" + names[i] + "," +
                      names[i] + ") must be 1");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (m[i][j] != kInfiniteBond && m[i][j] < 2)
        throw UserError("Coxeter matrix: off-diagonal entry m(" + names[i] +
                        "," + names[j] + ") must be >= 2 or infinite");
      if (m[i][j] != m[j][i])
        throw UserError("Coxeter matrix: not symmetric at (" + names[i] + "," +
                        names[j] + ")");
    }
  }
}

int CoxeterSystem::generator_index(const std::string& gname) const {
  for (std::size_t i = 0; i < matrix.names.size(); ++i)
    if (matrix.names[i] == gname) return static_cast<int>(i);
  return -1;
}

CyclotomicReal CoxeterSystem::bond_value(int i, int j) const {
  const auto& b = bond[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  switch (b.kind) {
    case BondScalar::Kind::zero:
      return CyclotomicReal::from_rational(field, Rational(0));
    case BondScalar::Kind::rational:
      return CyclotomicReal::from_rational(field, b.r);
    case BondScalar::Kind::general:
      return CyclotomicReal(field, b.c);
  }
  throw InternalError("bond_value: bad kind");
}

std::shared_ptr<const CoxeterSystem> make_system(CoxeterMatrix matrix,
                                                 std::string name) {
  matrix.validate();
  auto sys = std::make_shared<CoxeterSystem>();
  sys->name = std::move(name);
  sys->matrix = std::move(matrix);
  const int n = sys->rank();

  std::set<long> labels;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (sys->bond_finite(i, j)) labels.insert(sys->bond_label(i, j));
  sys->field = build_field(labels);
  const auto& ctx = *sys->field;

  sys->bond.assign(static_cast<std::size_t>(n),
                   std::vector<CoxeterSystem::BondScalar>(static_cast<std::size_t>(n)));
  sys->neighbors.assign(static_cast<std::size_t>(n), {});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CoxeterSystem::BondScalar& b = sys->bond[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      fieldops::Coeffs value;
      if (i == j) {
        value = fieldops::from_rational(ctx, Rational(2));
      } else {
        const int label = sys->bond_label(i, j);
        if (label == 2) {
          value = fieldops::zero(ctx);
        } else if (label == kInfiniteBond) {
          value = fieldops::from_rational(ctx, Rational(-2));
        } else {
          value = two_cos(sys->field, ctx.conductor / label).coefficients();
          fieldops::negate_in_place(value);
        }
      }
      bool tail_zero = true;
      for (std::size_t k = 1; k < value.size(); ++k)
        if (value[k] != 0) tail_zero = false;
      if (fieldops::is_zero(value)) {
        b.kind = CoxeterSystem::BondScalar::Kind::zero;
      } else if (tail_zero) {
        b.kind = CoxeterSystem::BondScalar::Kind::rational;
        b.r = value[0];
      } else {
        b.kind = CoxeterSystem::BondScalar::Kind::general;
        b.c = std::move(value);
      }
      if (b.kind != CoxeterSystem::BondScalar::Kind::zero)
        sys->neighbors[static_cast<std::size_t>(i)].push_back(j);
    }
  }
  return sys;
}

std::shared_ptr<const CoxeterSystem> parse_group(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UserError(std::string("group file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UserError("group file: top level must be an object");
  if (!doc.contains("name") || !doc["name"].is_string())
    throw UserError("group file: missing string field 'name'");
  if (!doc.contains("generators") || !doc["generators"].is_array())
    throw UserError("group file: missing array field 'generators'");
  if (!doc.contains("matrix") || !doc["matrix"].is_array())
    throw UserError("group file: missing array field 'matrix'");

  CoxeterMatrix cm;
  for (const auto& g : doc["generators"]) {
    if (!g.is_string())
      throw UserError("group file: generator names must be strings");
    cm.names.push_back(g.get<std::string>());
  }
  for (const auto& row : doc["matrix"]) {
    if (!row.is_array()) throw UserError("group file: matrix rows must be arrays");
    std::vector<int> r;
    for (const auto& e : row) {
      if (e.is_string()) {
        if (e.get<std::string>() != "inf")
          throw UserError("group file: unknown matrix entry '" +
                          e.get<std::string>() + "' (use \"inf\" for infinity)");
        r.push_back(kInfiniteBond);
      } else if (e.is_number_integer()) {
        long v = e.get<long>();
        if (v < 1 || v >= kInfiniteBond)
          throw UserError("group file: matrix entries must be positive integers");
        r.push_back(static_cast<int>(v));
      } else {
        throw UserError("group file: matrix entries must be integers or \"inf\"");
      }
    }
    cm.m.push_back(std::move(r));
  }
  return make_system(std::move(cm), doc["name"].get<std::string>());
}

std::shared_ptr<const CoxeterSystem> parse_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UserError("cannot open group file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_group(ss.str());
}

TriangleReport triangle_scan(const CoxeterSystem& sys) {
  TriangleReport rep;
  const int n = sys.rank();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!sys.bond_finite(i, j)) {
        rep.has_infinite_bond = true;
      } else {
        int label = sys.bond_label(i, j);
        if (!rep.max_finite_bond || label > *rep.max_finite_bond)
          rep.max_finite_bond = label;
      }
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        std::array<int, 3> labels = {sys.bond_label(i, j), sys.bond_label(i, k),
                                     sys.bond_label(j, k)};
        std::sort(labels.begin(), labels.end());
        if (labels[0] == 2 && labels[1] >= 3 && labels[1] != kInfiniteBond) {
          // (2, b, c), b, c >= 3, min finite: labels[2] may be infinite.
          rep.avoids_hecke_triangles = false;
          rep.hecke_triangles.push_back({i, j, k});
        }
        if (labels[0] == 3 && labels[1] == 3) {
          if (labels[2] == 3)
            rep.contains_333 = true;
          else if (labels[2] != kInfiniteBond)
            rep.contains_33c_finite = true;
        }
      }
  if (rep.avoids_hecke_triangles)
    rep.palindromic_set_finite = !rep.has_infinite_bond && !rep.contains_333;
  return rep;
}

}  // namespace coxsmooth
