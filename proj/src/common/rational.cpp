#include "common/rational.hpp"

#include <cctype>

namespace gatp {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

} // namespace

bool parse_rational(std::string_view text, Rational& out) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) return false;
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) return false;
  out = Rational(negative ? Integer(-n) : n, d);
  out.canonicalize();
  return true;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

} // namespace gatp
