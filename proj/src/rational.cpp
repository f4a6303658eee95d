#include "prp/rational.hpp"

#include <algorithm>
#include <cctype>

namespace prp {

std::string to_string(const Rational& value) { return value.str(); }

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// "0" is canonical, "00" and "012" are not.
bool canonical_digits(std::string_view s) { return all_digits(s) && (s.size() == 1 || s.front() != '0'); }

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    if (!canonical_digits(num)) return std::nullopt;
    if (negative && num == "0") return std::nullopt;

    Rational value{boost::multiprecision::mpz_int(std::string(num))};
    if (slash != std::string_view::npos) {
        const std::string_view den = body.substr(slash + 1);
        if (!canonical_digits(den) || den == "0" || den == "1") return std::nullopt;
        const boost::multiprecision::mpz_int n{std::string(num)};
        const boost::multiprecision::mpz_int d{std::string(den)};
        if (gcd(n, d) != 1) return std::nullopt;
        value = Rational(n, d);
    }
    if (negative) value = -value;
    return value;
}

Rational dot(const Vector& a, const Vector& b) {
    Rational sum = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) sum += a[i] * b[i];
    return sum;
}

bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace prp
