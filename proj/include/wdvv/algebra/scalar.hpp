#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace wdvv::algebra {

/// Arbitrary-precision rational; GMP keeps it in lowest terms with a
/// positive denominator after every arithmetic operation.
using Scalar = mpq_class;
using Integer = mpz_class;

std::string to_string(const Scalar& s);
/// Accepts `n`, `-n`, `n/d`; the result is canonical.
std::optional<Scalar> parse_scalar(std::string_view text);

inline Scalar make_scalar(long num, long den = 1) {
    Scalar s(num, den);
    s.canonicalize();
    return s;
}

} // namespace wdvv::algebra
