#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prp {

/// Exact rational scalar. Expression templates are disabled so `auto` is safe.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

using Vector = std::vector<Rational>;

/// Canonical text form: "p/q" in lowest terms, or "p" for integers.
std::string to_string(const Rational& value);

/// Parses the canonical form only: an optional '-', digits, and an optional
/// "/digits" with a positive denominator, already reduced. Anything else
/// (including "2/4", "1/0", "+1", "0.5") yields nullopt.
std::optional<Rational> parse_rational(std::string_view text);

Rational dot(const Vector& a, const Vector& b);

bool is_zero(const Vector& v);

}  // namespace prp
