#pragma once

#include <string>

namespace ncosc {

/// Shortest-form independent, locale-free rendering with 17 significant digits.
std::string format_double(double value);

}  // namespace ncosc
