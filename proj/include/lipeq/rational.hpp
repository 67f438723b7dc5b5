#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lipeq {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "a", "-a", "a/b" with decimal integers; the result is canonical.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

}  // namespace lipeq
