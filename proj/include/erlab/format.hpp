#ifndef ERLAB_FORMAT_HPP
#define ERLAB_FORMAT_HPP

#include <optional>
#include <string>

namespace erlab {

// Shortest decimal that parses back to the same double; "inf", "-inf", "nan"
// for non-finite values.
std::string format_double(double x);

// Empty string for nullopt.
std::string format_optional(const std::optional<double>& x);

}  // namespace erlab

#endif  // ERLAB_FORMAT_HPP
