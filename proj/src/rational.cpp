#include "triadic/rational.hpp"

#include "triadic/error.hpp"

#include <algorithm>
#include <cctype>

namespace triadic {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
    if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den)))
        throw Error(ErrorKind::ParseError, "not a rational: \"" + std::string(text) + "\"");
    if (slash != std::string_view::npos && den.find_first_not_of('0') == std::string_view::npos)
        throw Error(ErrorKind::ParseError, "zero denominator: \"" + std::string(text) + "\"");

    // GMP rejects a leading '+'.
    std::string canonical(text.front() == '+' ? text.substr(1) : text);
    Rational r(canonical, 10);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& r) { return r.get_str(); }

Rational sum(std::span<const Rational> values) {
    Rational total(0);
    for (const auto& v : values) total += v;
    return total;
}

bool is_distribution(std::span<const Rational> values) {
    return std::all_of(values.begin(), values.end(), [](const Rational& v) { return sgn(v) >= 0; }) &&
           sum(values) == 1;
}

}  // namespace triadic
