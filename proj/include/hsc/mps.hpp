#ifndef HSC_MPS_HPP_
#define HSC_MPS_HPP_

#include <filesystem>
#include <string>

#include "hsc/milp.hpp"

namespace hsc {

// Fixed-section MPS with positional names (C0000001, R0000001). Numbers are
// written in shortest round-trip form, so a field may exceed the classic
// 12-character width; infinite right-hand sides are written as 1e+30.
std::string to_mps(const MilpInstance& inst);
void export_mps(const MilpInstance& inst, const std::filesystem::path& path);

// Reads what to_mps writes (and ordinary fixed/free MPS without RANGES).
MilpInstance parse_mps(const std::string& text, const std::string& source = "mps");
MilpInstance read_mps(const std::filesystem::path& path);

}  // namespace hsc

#endif  // HSC_MPS_HPP_
