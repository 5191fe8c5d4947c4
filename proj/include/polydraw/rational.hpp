#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polydraw {

// Expression templates are disabled so that `auto` binds to values.
using Scalar = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                             boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

using Vector = std::vector<Scalar>;
using IntVector = std::vector<Integer>;

/// Thrown for malformed input, violated preconditions and invalid requests.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a computation cannot complete (singular systems, divergence).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "p/q", or a decimal literal such as "-0.125" exactly.
Scalar parse_scalar(std::string_view text);

/// Canonical "p/q" form; integers are written without a denominator.
std::string format_scalar(const Scalar& value);

/// Exact rational value of a finite double.
Scalar scalar_from_double(double value);

double to_double(const Scalar& value);

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b);
Vector add(std::span<const Scalar> a, std::span<const Scalar> b);
Vector subtract(std::span<const Scalar> a, std::span<const Scalar> b);
Vector scale(std::span<const Scalar> a, const Scalar& factor);
/// a + factor * b
Vector axpy(std::span<const Scalar> a, const Scalar& factor, std::span<const Scalar> b);
Vector barycenter(const std::vector<Vector>& points);
Vector unit_vector(std::size_t dim, std::size_t index);

bool is_zero(std::span<const Scalar> a);

/// Smallest positive integer multiple of `a` with coprime entries (same direction).
IntVector primitive_integer(std::span<const Scalar> a);
IntVector primitive_integer(std::span<const Integer> a);
Vector to_scalar(std::span<const Integer> a);

}  // namespace polydraw
