#include "cev/core/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "cev/core/errors.hpp"

namespace cev {

std::string format_double(double x) {
  if (std::isnan(x)) throw DomainError("cannot format NaN");
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw DomainError("cannot format number");
  return std::string(buf, end);
}

double parse_double(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && (text[begin] == ' ' || text[begin] == '\t')) ++begin;
  while (end > begin && (text[end - 1] == ' ' || text[end - 1] == '\t' ||
                         text[end - 1] == '\r')) {
    --end;
  }
  const std::string body = text.substr(begin, end - begin);
  if (body == "inf" || body == "+inf" || body == "Inf" || body == "infinity") {
    return HUGE_VAL;
  }
  if (body == "-inf" || body == "-Inf") return -HUGE_VAL;
  const char* first = body.data();
  if (!body.empty() && body[0] == '+') ++first;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(first, body.data() + body.size(), value);
  if (body.empty() || ec != std::errc() || ptr != body.data() + body.size()) {
    throw DomainError("not a number: '" + text + "'");
  }
  if (std::isnan(value)) throw DomainError("NaN is not accepted");
  return value;
}

}  // namespace cev
