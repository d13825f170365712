#pragma once

// Random program and memory generation for differential tests.  Programs
// favor small literals so memory accesses usually land inside {0,1,2} but
// regularly miss it too, giving a healthy mix of runs and stuck cases.

#include <random>

#include "lolli/imp.hpp"

namespace lolli {

ProgPtr random_program(std::mt19937& rng, int depth, bool loops = false);
Memory random_memory(std::mt19937& rng);  // locations 0,1,2 with values < 100

}  // namespace lolli
