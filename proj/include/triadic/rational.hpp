#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace triadic {

/// Exact rational; all probabilities and loss constants use it.
using Rational = mpq_class;

/// num/den in canonical form (gmpxx leaves two-argument construction unreduced). den != 0.
template <class Num, class Den>
Rational ratio(const Num& num, const Den& den) {
    Rational r{mpz_class(num), mpz_class(den)};
    r.canonicalize();
    return r;
}

/// Parses "p", "-p" or "p/q" (decimal integers, q != 0) into canonical form.
/// Throws Error(ParseError) on anything else.
Rational parse_rational(std::string_view text);

/// Canonical text: "p" for integers, "p/q" otherwise.
std::string format_rational(const Rational& r);

Rational sum(std::span<const Rational> values);

/// Probability vector check: entries >= 0 and exact sum 1.
bool is_distribution(std::span<const Rational> values);

}  // namespace triadic
