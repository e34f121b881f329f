#pragma once

// RationalForm: the universal exact value type of the toolkit.
//
// A value is a polynomial numerator over the variables
//   px, py, pz, x, y, z, r, k, k1, k2, k3
// divided by a monomial denominator x^a y^b z^c s^d, where
//   s = x^2 + y^2 + z^2   and   r^2 = s  (r is kept to exponent 0 or 1).
//
// Forms are immutable after construction and always canonical:
//   * no zero coefficients, no duplicate monomials, terms sorted
//     (graded lex on (px,py,pz,x,y,z,r,k,k1,k2,k3), leading term first);
//   * numerator not divisible by x when a > 0 (same for y, z) and not
//     divisible by s when d > 0.
// Two forms represent the same function iff they compare equal.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kcp/errors.hpp"
#include "kcp/scalar.hpp"

namespace kcp {

// Variable order fixes the canonical term order.
enum Var : int { PX = 0, PY, PZ, X, Y, Z, R, K, K1, K2, K3 };
inline constexpr int kNumVars = 11;

const char* var_name(Var v);
std::optional<Var> var_from_name(const std::string& name);
inline bool is_phase_var(Var v) { return v <= Z; }
inline bool is_param_var(Var v) { return v >= K; }

struct Monomial {
    std::array<int16_t, kNumVars> e{};

    int grade() const {
        int g = 0;
        for (int16_t d : e) g += d;
        return g;
    }
    int momentum_degree() const { return e[PX] + e[PY] + e[PZ]; }

    friend Monomial operator+(const Monomial& a, const Monomial& b) {
        Monomial m;
        for (int i = 0; i < kNumVars; ++i) m.e[i] = static_cast<int16_t>(a.e[i] + b.e[i]);
        return m;
    }
    bool operator==(const Monomial&) const = default;
};

// Graded lex; used descending so the leading term comes first.
bool monomial_less(const Monomial& a, const Monomial& b);

struct MonomialHash {
    size_t operator()(const Monomial& m) const noexcept {
        // FNV-1a over the packed exponents.
        uint64_t h = 1469598103934665603ull;
        for (int16_t d : m.e) {
            h ^= static_cast<uint16_t>(d);
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

// Denominator x^x y^y z^z s^s (exponents, all >= 0).
struct Denominator {
    int16_t x = 0, y = 0, z = 0, s = 0;
    bool trivial() const { return x == 0 && y == 0 && z == 0 && s == 0; }
    bool operator==(const Denominator&) const = default;
};

// Exact evaluation point; r must satisfy r^2 = x^2 + y^2 + z^2.
struct RationalPoint {
    Scalar x, y, z, px, py, pz, r, k, k1, k2, k3;
    const Scalar& get(Var v) const;
};

using TermMap = std::unordered_map<Monomial, Scalar, MonomialHash>;

class RationalForm {
public:
    using Term = std::pair<Monomial, Scalar>;

    RationalForm() = default; // zero

    static RationalForm constant(Scalar c);
    static RationalForm integer(long n) { return constant(scalar(n)); }
    static RationalForm variable(Var v);
    // Canonicalizes: cancels denominators, sorts, drops zeros.
    static RationalForm make(TermMap terms, Denominator den);

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Denominator& den() const { return den_; }
    size_t size() const { return terms_.size(); }

    RationalForm operator-() const;
    friend RationalForm operator+(const RationalForm& f, const RationalForm& g);
    friend RationalForm operator-(const RationalForm& f, const RationalForm& g);
    friend RationalForm operator*(const RationalForm& f, const RationalForm& g);
    RationalForm& operator+=(const RationalForm& g);
    RationalForm& operator-=(const RationalForm& g);
    RationalForm& operator*=(const RationalForm& g);

    bool operator==(const RationalForm&) const = default;

private:
    std::vector<Term> terms_; // sorted, leading monomial first
    Denominator den_;
};

// Serial reference kernel and the OpenMP term-block kernel. operator*
// dispatches between them; both produce identical canonical results.
RationalForm mul_serial(const RationalForm& f, const RationalForm& g);
RationalForm mul_parallel(const RationalForm& f, const RationalForm& g);

// Signed sum over a common denominator with a single normalization pass.
RationalForm linear_combination(const std::vector<const RationalForm*>& forms,
                                const std::vector<int>& signs);

RationalForm scale(const RationalForm& f, const Scalar& c);
inline RationalForm operator*(const RationalForm& f, const Scalar& c) { return scale(f, c); }
inline RationalForm operator*(const Scalar& c, const RationalForm& f) { return scale(f, c); }

RationalForm pow(const RationalForm& f, long n);
// Requires the divisor to be a single invertible term c * monomial * r^{0,1} * s^d
// (after peeling explicit s factors); throws NonInvertibleDivisor otherwise.
RationalForm invert(const RationalForm& f);
RationalForm div(const RationalForm& f, const RationalForm& g);

// v must be a phase variable. dr/dx = x*r/s and cyclic.
RationalForm derivative(const RationalForm& f, Var v);

// Canonical bracket sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i) over
// (x,px), (y,py), (z,pz).
RationalForm poisson_bracket(const RationalForm& f, const RationalForm& g);

bool equals(const RationalForm& f, const RationalForm& g);

// Throws UndefinedDegree on the zero form.
int momentum_degree(const RationalForm& f);

Scalar eval_rational(const RationalForm& f, const RationalPoint& pt);

// Substitutes an exact value for a parameter variable (K..K3).
RationalForm substitute_param(const RationalForm& f, Var v, const Scalar& value);

// Deterministic text rendering, parseable by the expression DSL.
std::string render(const RationalForm& f);

// Bidegree (lambda, mu) under the scaling symmetry of the catalog systems:
// lambda weights x,y,z,r by 1, k by 1, k1..k3 by 2; mu weights px,py,pz by 1,
// k by 2, k1..k3 by 2. Returns the common bidegree when f is bihomogeneous.
std::optional<std::pair<int, int>> bidegree(const RationalForm& f);
std::pair<int, int> monomial_bidegree(const Monomial& m);

} // namespace kcp
