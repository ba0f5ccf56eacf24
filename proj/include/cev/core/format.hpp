#pragma once

#include <string>

namespace cev {

// Shortest decimal text that parses back to the same double; "inf" for +inf.
std::string format_double(double x);

// Inverse of format_double. Throws DomainError on malformed text or NaN.
double parse_double(const std::string& text);

}  // namespace cev
