#ifndef HSC_TOOLS_DESK_SCENARIOS_HPP_
#define HSC_TOOLS_DESK_SCENARIOS_HPP_

// Synthetic and calibrated scenarios shipped under data/. The generator
// writes them; tests rebuild the random ones in memory.

#include <cstdint>

#include "hsc/scenario.hpp"

namespace hsc::desk {

// Nine-grid island bundle with Table-2 calibrated demand.
Scenario corsica();

// Two grids, two periods, two months, sizes {mini, small}.
Scenario reference();

// Tiny randomized instance (<= 2 grids, <= 2 periods, <= 3 months). The
// generator keeps the seeds whose integer domain fits the oracle.
Scenario oracle_candidate(std::uint32_t seed);

// Like oracle_candidate but with zero discount and inflation rates.
Scenario undiscounted(std::uint32_t seed);

}  // namespace hsc::desk

#endif  // HSC_TOOLS_DESK_SCENARIOS_HPP_
