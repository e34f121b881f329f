#include "kcp/verifier.hpp"

#include <random>

#include "kcp/echelon.hpp"
#include "kcp/parallel.hpp"

namespace kcp {

SymbolTable bracket_symbols(const PhaseSystem& sys) {
    SymbolTable table = sys.symbols();
    const RationalForm* a1 = sys.find("A1");
    const RationalForm* a2 = sys.find("A2");
    const RationalForm* b1 = sys.find("B1");
    const RationalForm* b2 = sys.find("B2");
    if (a1 && b1) table.emplace("C1", poisson_bracket(*a1, *b1));
    if (a2 && b2) table.emplace("C2", poisson_bracket(*a2, *b2));
    if (b1 && b2) table.emplace("D", poisson_bracket(*b1, *b2));
    return table;
}

bool is_first_integral(const PhaseSystem& sys, const std::string& name) {
    const RationalForm* f = sys.find(name);
    if (!f) throw UnknownGenerator("system does not define " + name);
    return poisson_bracket(sys.hamiltonian, *f).is_zero();
}

std::vector<std::pair<std::string, std::string>> CommutationTable::vanishing_pairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (size_t i = 0; i < names.size(); ++i)
        for (size_t j = i + 1; j < names.size(); ++j)
            if (vanishes[i][j]) out.emplace_back(names[i], names[j]);
    return out;
}

CommutationTable commutation_table(const PhaseSystem& sys) {
    CommutationTable table;
    table.names = sys.generator_names();
    size_t n = table.names.size();
    table.vanishes.assign(n, std::vector<bool>(n, true));
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
#pragma omp parallel for schedule(dynamic) if (parallel_enabled())
    for (long pi = 0; pi < static_cast<long>(pairs.size()); ++pi) {
        auto [i, j] = pairs[static_cast<size_t>(pi)];
        bool zero =
            poisson_bracket(sys.integrals[i].form, sys.integrals[j].form).is_zero();
        table.vanishes[i][j] = zero;
        table.vanishes[j][i] = zero;
    }
    return table;
}

namespace {

RelationOutcome check_relation_with(const PhaseSystem& sys, const SymbolTable& symbols,
                                    const RelationSpec& rel, bool try_correction,
                                    int param_degree_cap) {
    RelationOutcome out;
    out.name = rel.name;
    out.source = rel.source;

    RationalForm lhs = eval_bracket_expr(rel.lhs, symbols);
    RationalForm rhs = eval_bracket_expr(rel.rhs, symbols);
    RationalForm residual = lhs - rhs;
    if (residual.is_zero()) {
        out.status = RelationOutcome::Status::Verbatim;
        return out;
    }
    out.residual_terms = residual.size();
    if (residual.size() <= 12) out.residual = render(residual);
    if (try_correction) {
        if (auto corrected = fit_in_closure_ansatz(sys, lhs, param_degree_cap)) {
            out.status = RelationOutcome::Status::Corrected;
            out.corrected_rhs = render(*corrected);
            return out;
        }
    }
    out.status = RelationOutcome::Status::Failed;
    return out;
}

} // namespace

RelationOutcome check_relation(const PhaseSystem& sys, const RelationSpec& rel,
                               bool try_correction, int param_degree_cap) {
    SymbolTable symbols = bracket_symbols(sys);
    return check_relation_with(sys, symbols, rel, try_correction, param_degree_cap);
}

std::vector<RelationOutcome> check_relations(const PhaseSystem& sys,
                                             const std::vector<RelationSpec>& table,
                                             bool try_correction, int param_degree_cap) {
    SymbolTable symbols = bracket_symbols(sys);
    std::vector<RelationOutcome> out(table.size());
#pragma omp parallel for schedule(dynamic) if (parallel_enabled())
    for (long i = 0; i < static_cast<long>(table.size()); ++i)
        out[static_cast<size_t>(i)] = check_relation_with(sys, symbols,
                                                          table[static_cast<size_t>(i)],
                                                          try_correction, param_degree_cap);
    return out;
}

std::vector<SpecialImplicationOutcome> check_special_implications(const PhaseSystem& sys,
                                                                  const GenPoly& F1,
                                                                  const GenPoly& F2) {
    if (F1.is_zero() || F2.is_zero())
        throw FitUnavailable("special implications need the fitted F1 and F2");

    const RationalForm& a1 = *sys.find("A1");
    const RationalForm& a2 = *sys.find("A2");
    const RationalForm& b1 = *sys.find("B1");
    const RationalForm& b2 = *sys.find("B2");
    RationalForm c1 = poisson_bracket(a1, b1);
    RationalForm c2 = poisson_bracket(a2, b2);
    RationalForm d = poisson_bracket(b1, b2);

    RationalForm dF1_dA2 = to_phase(F1.partial(GenSym::A2), sys);
    RationalForm dF1_dB1 = to_phase(F1.partial(GenSym::B1), sys);
    RationalForm dF2_dA1 = to_phase(F2.partial(GenSym::A1), sys);
    RationalForm dF2_dB2 = to_phase(F2.partial(GenSym::B2), sys);

    std::vector<SpecialImplicationOutcome> out;

    {
        SpecialImplicationOutcome rec;
        rec.name = "a";
        RationalForm residual = poisson_bracket(c1, b2) * c1 - dF1_dA2 * c2 - dF1_dB1 * d;
        rec.stated_zero = residual.is_zero();
        rec.corrected_zero = rec.stated_zero;
        rec.note = "{C1,B2} C1 - dF1/dA2 C2 - dF1/dB1 D";
        out.push_back(std::move(rec));
    }
    {
        SpecialImplicationOutcome rec;
        rec.name = "b";
        RationalForm residual = poisson_bracket(c2, b1) * c2 - dF2_dA1 * c1 + dF2_dB2 * d;
        rec.stated_zero = residual.is_zero();
        rec.corrected_zero = rec.stated_zero;
        rec.note = "{C2,B1} C2 - dF2/dA1 C1 + dF2/dB2 D";
        out.push_back(std::move(rec));
    }
    {
        SpecialImplicationOutcome rec;
        rec.name = "c";
        RationalForm brkt = poisson_bracket(c1, c2) * c1 * c2;
        RationalForm x = dF1_dB1 * dF2_dA1 * c1;
        RationalForm rest = dF1_dA2 * dF2_dB2 * c2 + dF1_dB1 * dF2_dB2 * d;
        rec.stated_zero = (brkt - x - rest).is_zero();
        rec.corrected_zero = (brkt + x - rest).is_zero();
        rec.note = "{C1,C2} C1 C2 -/+ dF1/dB1 dF2/dA1 C1 - dF1/dA2 dF2/dB2 C2 - dF1/dB1 dF2/dB2 D";
        out.push_back(std::move(rec));
    }
    return out;
}

int jacobian_rank(const PhaseSystem& sys, const std::vector<std::string>& names,
                  const RationalPoint& pt) {
    static constexpr Var kPhase[6] = {X, Y, Z, PX, PY, PZ};
    EchelonSolver solver;
    for (const std::string& name : names) {
        const RationalForm* f = sys.find(name);
        if (!f) throw UnknownGenerator("system does not define " + name);
        SparseVec grad;
        for (int c = 0; c < 6; ++c) {
            Scalar v = eval_rational(derivative(*f, kPhase[c]), pt);
            if (v != 0) grad.nz.emplace_back(c, std::move(v));
        }
        solver.insert(std::move(grad));
    }
    return static_cast<int>(solver.rank());
}

namespace {

// Portable seeded rationals (mt19937_64 output is standardized; the
// distributions in <random> are not).
Scalar random_rational(std::mt19937_64& rng, bool positive) {
    long num = static_cast<long>(rng() % 17) - 8; // -8..8
    if (positive && num <= 0) num = 1 - num;      // 1..9
    if (num == 0) num = 1;
    long den = static_cast<long>(rng() % 4) + 1; // 1..4
    return scalar(num, den);
}

} // namespace

std::vector<RationalPoint> rank_sample_points(uint64_t seed, int draws_per_point) {
    static constexpr long kXyz[3][4] = {{1, 2, 2, 3}, {2, 3, 6, 7}, {3, 4, 12, 13}};
    std::mt19937_64 rng(seed);
    std::vector<RationalPoint> points;
    for (const auto& xyz : kXyz) {
        for (int d = 0; d < draws_per_point; ++d) {
            RationalPoint pt;
            pt.x = scalar(xyz[0]);
            pt.y = scalar(xyz[1]);
            pt.z = scalar(xyz[2]);
            pt.r = scalar(xyz[3]);
            pt.px = random_rational(rng, false);
            pt.py = random_rational(rng, false);
            pt.pz = random_rational(rng, false);
            pt.k = random_rational(rng, true);
            pt.k1 = random_rational(rng, true);
            pt.k2 = random_rational(rng, true);
            pt.k3 = random_rational(rng, true);
            points.push_back(std::move(pt));
        }
    }
    return points;
}

int max_jacobian_rank(const PhaseSystem& sys, const std::vector<std::string>& names,
                      uint64_t seed, int draws_per_point) {
    int best = 0;
    for (const RationalPoint& pt : rank_sample_points(seed, draws_per_point))
        best = std::max(best, jacobian_rank(sys, names, pt));
    return best;
}

} // namespace kcp
