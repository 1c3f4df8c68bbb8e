#include "coxsmooth/fixtures.hpp"

#include <utility>

#include "coxsmooth/errors.hpp"

namespace coxsmooth::fixtures {

namespace {

CoxeterMatrix uniform_matrix(int m, int n, const std::string& prefix) {
  if (n < 1) throw UserError("fixture: rank must be at least 1");
  if (m != kInfiniteBond && m < 2)
    throw UserError("fixture: bond label must be at least 2 or infinite");
  CoxeterMatrix mat;
  for (int i = 1; i <= n; ++i) mat.names.push_back(prefix + std::to_string(i));
  mat.m.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), m));
  for (int i = 0; i < n; ++i) mat.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return mat;
}

std::string bond_text(int label) {
  return label == kInfiniteBond ? "inf" : std::to_string(label);
}

}  // namespace

std::shared_ptr<const CoxeterSystem> make_a2() {
  CoxeterMatrix mat;
  mat.names = {"s", "t"};
  mat.m = {{1, 3}, {3, 1}};
  return make_system(std::move(mat), "A2");
}

std::shared_ptr<const CoxeterSystem> make_dihedral(int m) {
  CoxeterMatrix mat;
  mat.names = {"s", "t"};
  mat.m = {{1, m}, {m, 1}};
  return make_system(std::move(mat), "I2(" + bond_text(m) + ")");
}

std::shared_ptr<const CoxeterSystem> make_uniform(int m, int n) {
  return make_system(uniform_matrix(m, n, "s"),
                     "W(" + bond_text(m) + "," + std::to_string(n) + ")");
}

std::shared_ptr<const CoxeterSystem> make_triangle(int m_rs, int m_rt,
                                                   int m_st) {
  CoxeterMatrix mat;
  mat.names = {"r", "s", "t"};
  mat.m = {{1, m_rs, m_rt}, {m_rs, 1, m_st}, {m_rt, m_st, 1}};
  return make_system(std::move(mat), "T(" + bond_text(m_rs) + "," +
                                         bond_text(m_rt) + "," +
                                         bond_text(m_st) + ")");
}

std::shared_ptr<const CoxeterSystem> make_h3() {
  CoxeterMatrix mat;
  mat.names = {"r", "s", "t"};
  mat.m = {{1, 2, 3}, {2, 1, 5}, {3, 5, 1}};
  return make_system(std::move(mat), "H3");
}

std::shared_ptr<const CoxeterSystem> make_clique4() {
  CoxeterMatrix mat = uniform_matrix(3, 4, "s");
  mat.m[1][3] = 4;
  mat.m[3][1] = 4;
  return make_system(std::move(mat), "clique4");
}

std::shared_ptr<const CoxeterSystem> make_mixed5(int p) {
  CoxeterMatrix mat = uniform_matrix(2, 5, "s");
  auto set = [&mat](int i, int j, int label) {
    mat.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = label;
    mat.m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = label;
  };
  set(3, 4, p);
  set(0, 3, kInfiniteBond);
  set(1, 3, kInfiniteBond);
  set(0, 4, kInfiniteBond);
  set(1, 4, kInfiniteBond);
  set(1, 2, kInfiniteBond);
  return make_system(std::move(mat), "mixed5(" + bond_text(p) + ")");
}

std::string group_json(const CoxeterSystem& sys) {
  std::string out = "{\n  \"name\": \"" + sys.name + "\",\n  \"generators\": [";
  for (int i = 0; i < sys.rank(); ++i) {
    if (i) out += ", ";
    out += "\"" + sys.generator_name(i) + "\"";
  }
  out += "],\n  \"matrix\": [\n";
  for (int i = 0; i < sys.rank(); ++i) {
    out += "    [";
    for (int j = 0; j < sys.rank(); ++j) {
      if (j) out += ", ";
      const int label = sys.bond_label(i, j);
      out += label == kInfiniteBond ? "\"inf\"" : std::to_string(label);
    }
    out += i + 1 < sys.rank() ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

}  // namespace coxsmooth::fixtures
