#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace masim {

/// Plain value as it appears in knowledge bases, message payloads and the
/// environment. Numbers are doubles throughout; round counters and grid
/// coordinates are stored as integral doubles.
using Scalar = std::variant<double, std::string, bool>;

bool is_number(const Scalar& v);
double as_number(const Scalar& v);          // throws type_mismatch
std::string as_string(const Scalar& v);     // throws type_mismatch
bool scalar_equal(const Scalar& a, const Scalar& b);
std::string scalar_repr(const Scalar& v);   // stable text form for dumps

}  // namespace masim
