#include "quotamatch/rational.hpp"

#include <algorithm>

#include "quotamatch/errors.hpp"

namespace quotamatch {

namespace {

BigInt pow10(int k) {
  BigInt r = 1;
  for (int i = 0; i < k; ++i) r *= 10;
  return r;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

BigInt parse_digits(std::string_view s) {
  std::string trimmed(s);
  trimmed.erase(0, trimmed.find_first_not_of('0'));
  if (trimmed.empty()) trimmed = "0";
  return BigInt(trimmed);
}

[[noreturn]] void bad_numeral(std::string_view text) {
  throw ValueError("invalid numeral: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) bad_numeral(text);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    bool neg = false;
    if (!num.empty() && (num.front() == '+' || num.front() == '-')) {
      neg = num.front() == '-';
      num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) bad_numeral(text);
    BigInt n = parse_digits(num);
    BigInt d = parse_digits(den);
    if (d == 0) bad_numeral(text);
    if (neg) n = -n;
    return Rational(n, d);
  }

  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') {
    neg = text[i] == '-';
    ++i;
  }
  std::string digits;
  int frac_len = 0;
  bool seen_dot = false;
  bool any_frac = false;
  bool any_int = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_dot) bad_numeral(text);
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') bad_numeral(text);
    digits += c;
    if (seen_dot) {
      ++frac_len;
      any_frac = true;
    } else {
      any_int = true;
    }
  }
  if (!any_int && !any_frac) bad_numeral(text);
  if (seen_dot && !any_frac) bad_numeral(text);  // "1."
  BigInt n = parse_digits(digits);
  if (neg) n = -n;
  return Rational(n, pow10(frac_len));
}

std::string to_string_exact(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();

  BigInt d = den;
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return num.str() + "/" + den.str();

  int k = std::max(twos, fives);
  BigInt scaled = num * pow10(k) / den;  // exact: den divides num*10^k
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string s = scaled.str();
  if (static_cast<int>(s.size()) <= k) s.insert(0, static_cast<std::size_t>(k) + 1 - s.size(), '0');
  std::string ip = s.substr(0, s.size() - static_cast<std::size_t>(k));
  std::string fp = s.substr(s.size() - static_cast<std::size_t>(k));
  // den != 1 in lowest terms, so the last scaled digit is nonzero
  while (!fp.empty() && fp.back() == '0') fp.pop_back();
  return (neg ? "-" : "") + ip + "." + fp;
}

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

}  // namespace quotamatch
