#pragma once

// Exact ansatz fitting: expresses bracket expressions as polynomials in the
// integrals with parameter-polynomial coefficients. Re-derives the structure
// functions F1, F2, F3 and the full ternary quadratic closure.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kcp/form.hpp"
#include "kcp/genpoly.hpp"
#include "kcp/system.hpp"

namespace kcp {

struct BasisGenerator {
    std::string name;
    RationalForm form;
    int momentum_deg = 0;
    std::optional<GenSym> sym;                   // for GenPoly output
    std::optional<std::pair<int, int>> bidegree; // when the form is bihomogeneous
};

BasisGenerator make_generator(const PhaseSystem& sys, const std::string& name);

struct BasisCaps {
    int max_generator_degree = 2;
    int max_param_degree = 4;
    int max_momentum_degree = 10;
    int max_h_degree = 5; // coefficient-H cap; only used when H is a coefficient
    size_t max_elements = 1u << 20;
};

struct BasisElement {
    std::vector<uint8_t> gen_exp;       // aligned with AnsatzBasis::generators
    uint8_t h_exp = 0;                  // only when h_as_coefficient
    std::array<uint8_t, 4> param_exp{}; // k, k1, k2, k3
    size_t gen_part = 0;                // index into AnsatzBasis::gen_parts
};

class AnsatzBasis {
public:
    std::vector<BasisGenerator> generators;
    bool h_as_coefficient = false;
    std::optional<std::pair<int, int>> h_bidegree;
    BasisCaps caps;
    std::vector<BasisElement> elements;
    // Cached canonical expansions of the distinct generator-monomial x H^h
    // parts (parameter monomials are exponent shifts, not new expansions).
    std::vector<RationalForm> gen_parts;

    GenMono to_genmono(const BasisElement& e) const;
    int element_momentum_degree(const BasisElement& e) const;
    std::optional<std::pair<int, int>> element_bidegree(const BasisElement& e) const;
    bool filterable() const; // all generators (and H) carry bidegrees
};

// Enumerates all generator-monomial x H^h x parameter-monomial products
// within the caps. `hamiltonian` is required when h_as_coefficient (the
// closure-fit convention); otherwise list H among the generators.
// Throws CapTooLarge when the element count exceeds caps.max_elements.
AnsatzBasis enumerate_basis(std::vector<BasisGenerator> generators, BasisCaps caps,
                            bool h_as_coefficient, const RationalForm* hamiltonian);

struct FitResult {
    std::vector<std::pair<size_t, Scalar>> coefficients; // element index -> coefficient
    RationalForm residual;                               // zero on success
    bool unique = true;       // no basis dependency touches the solution support
    size_t dependent_columns = 0;
    bool success() const { return residual.is_zero(); }
    GenPoly to_genpoly(const AnsatzBasis& basis, const Scalar& scale = Scalar(1)) const;
};

// Exact coefficient matching of every phase-space x parameter monomial.
// Infeasibility is reported through a nonzero residual, not an error.
FitResult fit(const RationalForm& target, const AnsatzBasis& basis);

struct StructureFunctionFit {
    std::string a, b, extra;
    GenPoly F; // {A,B}^2 = 2 F(A, B, H, extra)
    FitResult raw;
};

// Cubic caps when both integrals are quadratic, quartic otherwise. Throws
// FitInfeasible when the bracket vanishes or a residual remains.
StructureFunctionFit fit_structure_function(const PhaseSystem& sys, const std::string& a,
                                            const std::string& b, const std::string& extra,
                                            int param_degree_cap = 4);

struct ClosureTriple {
    std::string outer, inner_a, inner_b;
    GenPoly value;
    bool ok = false;
    size_t residual_terms = 0;
    bool nonunique = false;
};

struct ClosureReport {
    std::vector<ClosureTriple> triples;
    bool all_ok = false;
    double seconds = 0.0;
};

// Every nested bracket {S_i, {S_j, S_k}} over the five generators, fitted
// quadratically in the generators with coefficients polynomial in H and the
// parameters. Failing triples are reported in the result, not thrown.
ClosureReport ternary_closure(const PhaseSystem& sys, int param_degree_cap = 4);

// One-off fit of an arbitrary expression in the closure ansatz; nullopt when
// it does not fit. Used to produce corrected right-hand sides.
std::optional<GenPoly> fit_in_closure_ansatz(const PhaseSystem& sys, const RationalForm& target,
                                             int param_degree_cap = 4);

struct DependencyTerm {
    std::string name; // "1" for the constant column
    std::array<uint8_t, 4> param_exp{};
    Scalar coeff;
};

struct RelationSearchResult {
    bool independent = true;
    std::vector<DependencyTerm> dependency;
};

// Searches for a nontrivial linear relation with parameter-polynomial
// coefficients (constant term allowed) among the named expressions.
RelationSearchResult linear_relation_search(const PhaseSystem& sys,
                                            const std::vector<std::string>& names,
                                            int param_degree_cap = 4);

struct DiffRow {
    std::string monomial; // rendered generator monomial, or raw text when unparseable
    std::optional<Scalar> paper;
    std::optional<Scalar> fitted;
    enum class Status { Match, Mismatch, PaperOnly, FittedOnly, Unparseable } status;
};

// Term-by-term PAPER vs FITTED table. Printed terms that do not parse in
// generator space (the paper's typos) surface as Unparseable rows.
std::vector<DiffRow> diff_against_paper(const GenPoly& fitted,
                                        const std::vector<std::string>& printed_terms);

} // namespace kcp
