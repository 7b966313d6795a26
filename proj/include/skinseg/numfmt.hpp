#pragma once

#include <string>

namespace skinseg {

// Shortest decimal string that round-trips to the same double.
// Infinities render as "inf"/"-inf".
std::string shortest_double(double value);

}  // namespace skinseg
