// Regenerates the JSON group files under fixtures/ from the programmatic
// definitions, so the on-disk files can never drift from the library.
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "coxsmooth/coxeter.hpp"
#include "coxsmooth/fixtures.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make-fixtures OUTPUT_DIR\n";
    return 1;
  }
  const std::string dir = argv[1];
  using coxsmooth::CoxeterSystem;
  namespace fx = coxsmooth::fixtures;

  const std::vector<
      std::pair<std::string, std::shared_ptr<const CoxeterSystem>>>
      files = {
          {"a2.json", fx::make_a2()},
          {"clique4.json", fx::make_clique4()},
          {"mixed5_p4.json", fx::make_mixed5(4)},
          {"h3.json", fx::make_h3()},
          {"t234.json", fx::make_triangle(2, 3, 4)},
          {"u33.json", fx::make_uniform(3, 3)},
          {"u43.json", fx::make_uniform(4, 3)},
          {"u44.json", fx::make_uniform(4, 4)},
          {"u53.json", fx::make_uniform(5, 3)},
      };

  for (const auto& [name, sys] : files) {
    const std::string path = dir + "/" + name;
    std::ofstream out(path);
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return 1;
    }
    out << fx::group_json(*sys);
    std::cout << "wrote " << path << "\n";
  }
  return 0;
}
