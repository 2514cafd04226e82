// Regenerates the shipped scenario bundles under a data directory.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "desk_scenarios.hpp"
#include "hsc/model.hpp"
#include "hsc/solver.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  const fs::path root = argc > 1 ? argv[1] : "data";
  const int wanted = argc > 2 ? std::stoi(argv[2]) : 20;
  try {
    hsc::write_scenario(hsc::desk::corsica(), root / "corsica");
    hsc::write_scenario(hsc::desk::reference(), root / "desk" / "reference");
    int kept = 0;
    for (std::uint32_t seed = 1; kept < wanted && seed < 10000; ++seed) {
      const hsc::Scenario s = hsc::desk::oracle_candidate(seed);
      if (!hsc::validate_scenario(s).empty()) continue;
      const hsc::HscModel model = hsc::assemble(s, hsc::ObjectiveKind::kCost);
      const double product = hsc::integer_domain_product(model.inst);
      if (product > 2e4 || product < 16) continue;
      const hsc::MilpSolution sol = hsc::solve_milp(model.inst);
      if (sol.status != hsc::SolveStatus::kOptimal) continue;
      char name[8];
      std::snprintf(name, sizeof(name), "%02d", kept);
      hsc::write_scenario(s, root / "desk" / "oracle" / name);
      std::cout << name << " seed " << seed << " integer domain " << product << " objective "
                << sol.objective << '\n';
      ++kept;
    }
    if (kept < wanted) {
      std::cerr << "only " << kept << " oracle bundles found\n";
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
