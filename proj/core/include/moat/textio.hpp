#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace moat {

/// Shortest decimal string that parses back to exactly the same double
/// (std::to_chars). "-0" and denormals round-trip bit-exactly.
std::string format_double(double value);

/// Strict parse of a finite double: the whole token must be consumed and the
/// value must be finite. Returns nullopt otherwise.
std::optional<double> parse_finite_double(std::string_view token);

/// Strict parse of a decimal integer token.
std::optional<std::int64_t> parse_int(std::string_view token);

}  // namespace moat
