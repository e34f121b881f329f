#pragma once

// Polynomials in the generator symbols A1, A2, B1, B2, F, H with
// coefficients in Q[k, k1, k2, k3]. Used for fitted structure functions,
// closure tables and paper diffs; expanded back to phase space on demand.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "kcp/form.hpp"
#include "kcp/system.hpp"

namespace kcp {

enum class GenSym : int { A1 = 0, A2, B1, B2, F, H, K, K1, K2, K3 };
inline constexpr int kNumGenSyms = 10;

const char* gensym_name(GenSym s);
std::optional<GenSym> gensym_from_name(std::string_view name);

struct GenMono {
    std::array<uint8_t, kNumGenSyms> e{};

    int grade() const {
        int g = 0;
        for (uint8_t d : e) g += d;
        return g;
    }
    int degree_in_generators() const {
        return e[0] + e[1] + e[2] + e[3] + e[4] + e[5]; // A1..F and H
    }
    bool operator==(const GenMono&) const = default;
};

bool genmono_less(const GenMono& a, const GenMono& b); // graded lex

struct GenMonoDesc {
    bool operator()(const GenMono& a, const GenMono& b) const { return genmono_less(b, a); }
};

class GenPoly {
public:
    using Terms = std::map<GenMono, Scalar, GenMonoDesc>;

    GenPoly() = default;
    static GenPoly constant(Scalar c);
    static GenPoly symbol(GenSym s);
    static GenPoly monomial(GenMono m, Scalar c);

    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    const Scalar* coefficient(const GenMono& m) const;

    GenPoly operator-() const;
    friend GenPoly operator+(const GenPoly& f, const GenPoly& g);
    friend GenPoly operator-(const GenPoly& f, const GenPoly& g);
    friend GenPoly operator*(const GenPoly& f, const GenPoly& g);
    GenPoly& operator+=(const GenPoly& g) { return *this = *this + g; }
    GenPoly& operator-=(const GenPoly& g) { return *this = *this - g; }
    friend GenPoly operator*(const GenPoly& f, const Scalar& c);

    bool operator==(const GenPoly&) const = default;

    // Formal partial derivative in generator space.
    GenPoly partial(GenSym s) const;

    void add_term(const GenMono& m, const Scalar& c);

private:
    Terms terms_;
};

GenPoly pow(const GenPoly& f, int n);

// Substitutes the system's expressions for the generator symbols.
// Throws UnknownGenerator if the system lacks a symbol that occurs.
RationalForm to_phase(const GenPoly& p, const PhaseSystem& sys);

std::string render(const GenPoly& p);
std::string render(const GenMono& m); // "A1^2*H*k3", "1" for the empty monomial

// Lowers a parsed DSL expression to generator space. Symbols must be
// generator symbols (A1, A2, B1, B2, F, H) or parameters; division is
// accepted for constant divisors only.
GenPoly lower_gen(const AstPtr& ast);
inline GenPoly lower_gen(std::string_view text) { return lower_gen(parse(text)); }

} // namespace kcp
