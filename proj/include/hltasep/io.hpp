#pragma once

#include <string>

namespace hltasep {

// Shortest round-trip decimal, '.' separator regardless of locale.
std::string format_double(double v);

}  // namespace hltasep
