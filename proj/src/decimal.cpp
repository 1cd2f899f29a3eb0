#include "netdelay/decimal.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace netdelay::decimal {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::optional<double> parse_scaled(std::string_view text, int shift) {
  std::size_t i = 0;
  std::string mantissa;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '-') mantissa.push_back('-');
    ++i;
  }
  std::size_t digits = 0;
  while (i < text.size() && is_digit(text[i])) {
    mantissa.push_back(text[i++]);
    ++digits;
  }
  if (i < text.size() && text[i] == '.') {
    mantissa.push_back(text[i++]);
    while (i < text.size() && is_digit(text[i])) {
      mantissa.push_back(text[i++]);
      ++digits;
    }
  }
  if (digits == 0) return std::nullopt;

  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    const auto [ptr, ec] = std::from_chars(text.data() + i + (i < text.size() && text[i] == '+'),
                                           text.data() + text.size(), exponent);
    if (ec != std::errc{}) return std::nullopt;
    i = static_cast<std::size_t>(ptr - text.data());
  }
  if (i != text.size()) return std::nullopt;

  const std::string scaled = mantissa + "e" + std::to_string(exponent + shift);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(scaled.data(), scaled.data() + scaled.size(), value);
  if (ptr != scaled.data() + scaled.size()) return std::nullopt;
  if (ec == std::errc::result_out_of_range) {
    // underflow rounds to zero; overflow is rejected
    if (std::string_view(scaled).find("e-") == std::string_view::npos) return std::nullopt;
    return mantissa.front() == '-' ? -0.0 : 0.0;
  }
  if (ec != std::errc{}) return std::nullopt;
  return value;
}

std::string format_scaled(double x, int shift) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  if (x == 0.0) return std::signbit(x) ? "-0" : "0";

  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::scientific);
  std::string_view sci(buf.data(), static_cast<std::size_t>(res.ptr - buf.data()));

  std::string out;
  if (sci.front() == '-') {
    out.push_back('-');
    sci.remove_prefix(1);
  }
  const auto e_pos = sci.find('e');
  std::string digits;
  for (char c : sci.substr(0, e_pos))
    if (c != '.') digits.push_back(c);
  const int exponent = std::atoi(std::string(sci.substr(e_pos + 1)).c_str()) + shift;

  // value = 0.d1d2d3... * 10^(exponent + 1)
  const long point = static_cast<long>(exponent) + 1;
  const long n = static_cast<long>(digits.size());
  if (point <= 0) {
    out += "0.";
    out.append(static_cast<std::size_t>(-point), '0');
    out += digits;
  } else if (point >= n) {
    out += digits;
    out.append(static_cast<std::size_t>(point - n), '0');
  } else {
    out += digits.substr(0, static_cast<std::size_t>(point));
    out += '.';
    out += digits.substr(static_cast<std::size_t>(point));
  }
  return out;
}

std::string format_shortest(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

}  // namespace netdelay::decimal
