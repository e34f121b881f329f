#pragma once

#include <gmpxx.h>

#include <string>

namespace kcp {

// Exact rational coefficient. mpq_class keeps gcd(|num|, den) = 1 and
// den > 0 after every operation, which is exactly the canonical form the
// rest of the kernel relies on.
using Scalar = mpq_class;

// Canonicalizing constructor (mpq_class(n, d) alone does not reduce).
inline Scalar scalar(long num, long den = 1) {
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "n" or "n/d" with arbitrary-precision digits.
Scalar scalar_from_string(const std::string& text);

Scalar scalar_pow(const Scalar& base, unsigned long exp);

inline std::string to_string(const Scalar& q) { return q.get_str(); }

} // namespace kcp
