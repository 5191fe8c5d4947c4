#include "polydraw/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace polydraw {

namespace {

Integer pow10(std::size_t exponent) {
  Integer result = 1;
  for (std::size_t i = 0; i < exponent; ++i) result *= 10;
  return result;
}

bool all_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Integer parse_integer(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (!all_digits(text)) {
    throw ValidationError("malformed number: '" + std::string(text) + "'");
  }
  std::string digits(text);
  // GMP treats a leading zero as an octal prefix.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  Integer value{digits};
  return negative ? Integer(-value) : value;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ValidationError("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    return Scalar(num, den);
  }

  if (auto dot_pos = text.find('.'); dot_pos != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot_pos);
    std::string_view frac = text.substr(dot_pos + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if (whole.empty()) whole = "0";
    if (frac.empty()) frac = "0";
    if (!all_digits(whole) || !all_digits(frac)) {
      throw ValidationError("malformed number: '" + std::string(text) + "'");
    }
    std::string digits = std::string(whole) + std::string(frac);
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    Integer num{digits};
    Scalar value(num, pow10(frac.size()));
    return negative ? Scalar(-value) : value;
  }

  return Scalar(parse_integer(text));
}

std::string format_scalar(const Scalar& value) {
  Integer num = boost::multiprecision::numerator(value);
  Integer den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Scalar scalar_from_double(double value) {
  if (!std::isfinite(value)) throw ValidationError("non-finite coordinate");
  // boost converts doubles to gmp rationals exactly.
  return Scalar(value);
}

double to_double(const Scalar& value) { return value.convert_to<double>(); }

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
  Scalar sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

Vector add(std::span<const Scalar> a, std::span<const Scalar> b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector subtract(std::span<const Scalar> a, std::span<const Scalar> b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector scale(std::span<const Scalar> a, const Scalar& factor) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * factor;
  return out;
}

Vector axpy(std::span<const Scalar> a, const Scalar& factor, std::span<const Scalar> b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + factor * b[i];
  return out;
}

Vector barycenter(const std::vector<Vector>& points) {
  if (points.empty()) throw ValidationError("barycenter of an empty point set");
  Vector sum(points.front().size(), Scalar(0));
  for (const auto& p : points) {
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += p[i];
  }
  Scalar n(static_cast<long>(points.size()));
  for (auto& s : sum) s /= n;
  return sum;
}

Vector unit_vector(std::size_t dim, std::size_t index) {
  Vector e(dim, Scalar(0));
  e.at(index) = 1;
  return e;
}

bool is_zero(std::span<const Scalar> a) {
  for (const auto& x : a) {
    if (x != 0) return false;
  }
  return true;
}

IntVector primitive_integer(std::span<const Integer> a) {
  Integer g = 0;
  for (const auto& x : a) g = gcd(g, Integer(abs(x)));
  IntVector out(a.begin(), a.end());
  if (g > 1) {
    for (auto& x : out) x /= g;
  }
  return out;
}

IntVector primitive_integer(std::span<const Scalar> a) {
  Integer l = 1;
  for (const auto& x : a) l = lcm(l, Integer(boost::multiprecision::denominator(x)));
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = boost::multiprecision::numerator(a[i]) * (l / boost::multiprecision::denominator(a[i]));
  }
  return primitive_integer(std::span<const Integer>(out));
}

Vector to_scalar(std::span<const Integer> a) {
  Vector out;
  out.reserve(a.size());
  for (const auto& x : a) out.emplace_back(x);
  return out;
}

}  // namespace polydraw
