#include "kcp/fitter.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <unordered_map>

#include "kcp/echelon.hpp"
#include "kcp/parallel.hpp"

namespace kcp {

namespace {

constexpr std::pair<int, int> kParamBidegree[4] = {{1, 2}, {2, 2}, {2, 2}, {2, 2}};

std::pair<int, int> param_bidegree(const std::array<uint8_t, 4>& p) {
    int l = 0, m = 0;
    for (int i = 0; i < 4; ++i) {
        l += p[i] * kParamBidegree[i].first;
        m += p[i] * kParamBidegree[i].second;
    }
    return {l, m};
}

// (x^2+y^2+z^2)^d as monomial/coefficient pairs; small d only.
std::vector<std::pair<Monomial, Scalar>> s_power_terms(int d) {
    std::vector<std::pair<Monomial, Scalar>> out{{Monomial{}, scalar(1)}};
    for (int step = 0; step < d; ++step) {
        std::unordered_map<Monomial, Scalar, MonomialHash> next;
        for (const auto& [m, c] : out)
            for (Var v : {X, Y, Z}) {
                Monomial mv = m;
                mv.e[v] = static_cast<int16_t>(mv.e[v] + 2);
                auto [it, inserted] = next.try_emplace(mv, c);
                if (!inserted) it->second += c;
            }
        out.assign(next.begin(), next.end());
    }
    return out;
}

// Terms of `form` over the common denominator, with the parameter monomial
// multiplied in.
std::vector<std::pair<Monomial, Scalar>> scaled_terms(const RationalForm& form,
                                                      const Denominator& common,
                                                      const std::array<uint8_t, 4>& params) {
    Monomial shift;
    shift.e[X] = static_cast<int16_t>(common.x - form.den().x);
    shift.e[Y] = static_cast<int16_t>(common.y - form.den().y);
    shift.e[Z] = static_cast<int16_t>(common.z - form.den().z);
    shift.e[K] = params[0];
    shift.e[K1] = params[1];
    shift.e[K2] = params[2];
    shift.e[K3] = params[3];
    int ds = common.s - form.den().s;

    std::vector<std::pair<Monomial, Scalar>> out;
    if (ds == 0) {
        out.reserve(form.size());
        for (const auto& [m, c] : form.terms()) out.emplace_back(m + shift, c);
        return out;
    }
    auto sp = s_power_terms(ds);
    std::unordered_map<Monomial, Scalar, MonomialHash> acc;
    acc.reserve(form.size() * sp.size());
    for (const auto& [m, c] : form.terms()) {
        Monomial base = m + shift;
        for (const auto& [sm, sc] : sp) {
            auto [it, inserted] = acc.try_emplace(base + sm, c * sc);
            if (!inserted) it->second += c * sc;
        }
    }
    out.assign(acc.begin(), acc.end());
    return out;
}

Denominator den_max(const Denominator& a, const Denominator& b) {
    Denominator d;
    d.x = std::max(a.x, b.x);
    d.y = std::max(a.y, b.y);
    d.z = std::max(a.z, b.z);
    d.s = std::max(a.s, b.s);
    return d;
}

const std::array<uint8_t, 4> kNoParams{};

} // namespace

BasisGenerator make_generator(const PhaseSystem& sys, const std::string& name) {
    const RationalForm* form = sys.find(name);
    if (!form) throw UnknownGenerator("system does not define " + name);
    BasisGenerator g;
    g.name = name;
    g.form = *form;
    g.momentum_deg = form->is_zero() ? 0 : momentum_degree(*form);
    g.sym = gensym_from_name(name);
    g.bidegree = bidegree(*form);
    return g;
}

GenMono AnsatzBasis::to_genmono(const BasisElement& e) const {
    GenMono m;
    for (size_t i = 0; i < generators.size(); ++i) {
        if (e.gen_exp[i] == 0) continue;
        if (!generators[i].sym)
            throw Error("generator " + generators[i].name + " has no symbol in generator space");
        int idx = static_cast<int>(*generators[i].sym);
        m.e[idx] = static_cast<uint8_t>(m.e[idx] + e.gen_exp[i]);
    }
    m.e[static_cast<int>(GenSym::H)] = static_cast<uint8_t>(
        m.e[static_cast<int>(GenSym::H)] + e.h_exp);
    for (int i = 0; i < 4; ++i)
        m.e[static_cast<int>(GenSym::K) + i] =
            static_cast<uint8_t>(m.e[static_cast<int>(GenSym::K) + i] + e.param_exp[i]);
    return m;
}

int AnsatzBasis::element_momentum_degree(const BasisElement& e) const {
    int deg = 2 * e.h_exp;
    for (size_t i = 0; i < generators.size(); ++i)
        deg += e.gen_exp[i] * generators[i].momentum_deg;
    return deg;
}

bool AnsatzBasis::filterable() const {
    for (const auto& g : generators)
        if (!g.bidegree) return false;
    if (h_as_coefficient && !h_bidegree) return false;
    return true;
}

std::optional<std::pair<int, int>> AnsatzBasis::element_bidegree(const BasisElement& e) const {
    int l = 0, m = 0;
    for (size_t i = 0; i < generators.size(); ++i) {
        if (e.gen_exp[i] == 0) continue;
        if (!generators[i].bidegree) return std::nullopt;
        l += e.gen_exp[i] * generators[i].bidegree->first;
        m += e.gen_exp[i] * generators[i].bidegree->second;
    }
    if (e.h_exp != 0) {
        if (!h_bidegree) return std::nullopt;
        l += e.h_exp * h_bidegree->first;
        m += e.h_exp * h_bidegree->second;
    }
    auto [pl, pm] = param_bidegree(e.param_exp);
    return std::pair<int, int>{l + pl, m + pm};
}

AnsatzBasis enumerate_basis(std::vector<BasisGenerator> generators, BasisCaps caps,
                            bool h_as_coefficient, const RationalForm* hamiltonian) {
    if (h_as_coefficient && !hamiltonian)
        throw Error("coefficient-H basis requires the Hamiltonian");

    AnsatzBasis basis;
    basis.generators = std::move(generators);
    basis.h_as_coefficient = h_as_coefficient;
    basis.caps = caps;
    if (h_as_coefficient) basis.h_bidegree = bidegree(*hamiltonian);

    const size_t ngen = basis.generators.size();
    std::map<std::pair<std::vector<uint8_t>, uint8_t>, size_t> part_index;

    // exponent tuples with total degree <= cap, lexicographic order
    std::vector<uint8_t> exp(ngen, 0);
    auto momentum_of = [&](const std::vector<uint8_t>& e) {
        int deg = 0;
        for (size_t i = 0; i < ngen; ++i) deg += e[i] * basis.generators[i].momentum_deg;
        return deg;
    };

    std::vector<std::pair<std::vector<uint8_t>, uint8_t>> parts; // insertion order
    auto emit = [&](const std::vector<uint8_t>& gen_exp) {
        int base_m = momentum_of(gen_exp);
        if (base_m > caps.max_momentum_degree) return;
        int hmax = 0;
        if (h_as_coefficient)
            hmax = std::min(caps.max_h_degree, (caps.max_momentum_degree - base_m) / 2);
        for (int h = 0; h <= hmax; ++h) {
            auto key = std::make_pair(gen_exp, static_cast<uint8_t>(h));
            size_t part;
            if (auto it = part_index.find(key); it != part_index.end()) {
                part = it->second;
            } else {
                part = parts.size();
                parts.push_back(key);
                part_index.emplace(key, part);
            }
            // max_param_degree caps each parameter exponent (k^4 legitimately
            // multiplies k3 in the quartic structure functions)
            std::array<uint8_t, 4> p{};
            for (p[0] = 0; p[0] <= caps.max_param_degree; ++p[0])
                for (p[1] = 0; p[1] <= caps.max_param_degree; ++p[1])
                    for (p[2] = 0; p[2] <= caps.max_param_degree; ++p[2])
                        for (p[3] = 0; p[3] <= caps.max_param_degree; ++p[3]) {
                            basis.elements.push_back(
                                {gen_exp, static_cast<uint8_t>(h), p, part});
                            if (basis.elements.size() > caps.max_elements)
                                throw CapTooLarge("ansatz basis exceeds the element cap");
                        }
        }
    };

    // all gen_exp with sum <= max_generator_degree, counting up like an odometer
    while (true) {
        int total = 0;
        for (uint8_t e : exp) total += e;
        if (total <= caps.max_generator_degree) emit(exp);
        size_t i = 0;
        for (; i < ngen; ++i) {
            if (++exp[i] <= caps.max_generator_degree) {
                int t = 0;
                for (uint8_t e : exp) t += e;
                if (t <= caps.max_generator_degree) break;
            }
            exp[i] = 0;
        }
        if (i == ngen) break;
    }

    // expand the distinct generator parts once, in parallel
    basis.gen_parts.resize(parts.size());
#pragma omp parallel for schedule(dynamic) if (parallel_enabled())
    for (long pi = 0; pi < static_cast<long>(parts.size()); ++pi) {
        const auto& [gen_exp, h] = parts[static_cast<size_t>(pi)];
        RationalForm f = RationalForm::integer(1);
        for (size_t i = 0; i < ngen; ++i)
            if (gen_exp[i] != 0) f *= pow(basis.generators[i].form, gen_exp[i]);
        if (h != 0) f *= pow(*hamiltonian, h);
        basis.gen_parts[static_cast<size_t>(pi)] = std::move(f);
    }
    return basis;
}

FitResult fit(const RationalForm& target, const AnsatzBasis& basis) {
    FitResult out;
    if (target.is_zero()) return out;

    const int tdeg = momentum_degree(target);
    const auto tbid = bidegree(target);
    const bool filter = tbid.has_value() && basis.filterable();

    std::vector<size_t> cand;
    for (size_t i = 0; i < basis.elements.size(); ++i) {
        const BasisElement& e = basis.elements[i];
        if (basis.element_momentum_degree(e) > tdeg) continue;
        if (filter && *basis.element_bidegree(e) != *tbid) continue;
        cand.push_back(i);
    }

    Denominator common = target.den();
    for (size_t i : cand) common = den_max(common, basis.gen_parts[basis.elements[i].gen_part].den());

    std::vector<std::vector<std::pair<Monomial, Scalar>>> columns(cand.size());
#pragma omp parallel for schedule(dynamic) if (parallel_enabled())
    for (long ci = 0; ci < static_cast<long>(cand.size()); ++ci) {
        const BasisElement& e = basis.elements[cand[static_cast<size_t>(ci)]];
        columns[static_cast<size_t>(ci)] =
            scaled_terms(basis.gen_parts[e.gen_part], common, e.param_exp);
    }
    auto target_terms = scaled_terms(target, common, kNoParams);

    // deterministic row ids: sorted monomial order over everything seen
    std::vector<Monomial> keys;
    keys.reserve(target_terms.size());
    for (const auto& [m, c] : target_terms) keys.push_back(m);
    for (const auto& col : columns)
        for (const auto& [m, c] : col) keys.push_back(m);
    std::sort(keys.begin(), keys.end(), monomial_less);
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::unordered_map<Monomial, RowId, MonomialHash> row_of;
    row_of.reserve(keys.size());
    for (size_t i = 0; i < keys.size(); ++i) row_of.emplace(keys[i], static_cast<RowId>(i));

    auto to_sparse = [&](const std::vector<std::pair<Monomial, Scalar>>& terms) {
        SparseVec v;
        v.nz.reserve(terms.size());
        for (const auto& [m, c] : terms) v.nz.emplace_back(row_of.at(m), c);
        v.sort_and_combine();
        return v;
    };

    EchelonSolver solver;
    std::vector<Combo> dependencies;
    for (auto& col : columns) {
        Combo dep;
        if (!solver.insert(to_sparse(col), &dep)) dependencies.push_back(std::move(dep));
        col.clear();
        col.shrink_to_fit();
    }
    out.dependent_columns = dependencies.size();

    SparseVec leftover;
    Combo sol = solver.reduce(to_sparse(target_terms), &leftover);

    TermMap rem;
    for (const auto& [id, c] : leftover.nz) rem.emplace(keys[static_cast<size_t>(id)], c);
    out.residual = RationalForm::make(std::move(rem), common);

    std::set<size_t> support;
    for (const auto& [pos, c] : sol) {
        if (c == 0) continue;
        out.coefficients.emplace_back(cand[pos], c);
        support.insert(pos);
    }
    out.unique = true;
    for (const Combo& dep : dependencies)
        for (const auto& [pos, c] : dep)
            if (support.count(pos)) out.unique = false;
    return out;
}

GenPoly FitResult::to_genpoly(const AnsatzBasis& basis, const Scalar& scale) const {
    GenPoly p;
    for (const auto& [idx, c] : coefficients)
        p.add_term(basis.to_genmono(basis.elements[idx]), c * scale);
    return p;
}

StructureFunctionFit fit_structure_function(const PhaseSystem& sys, const std::string& a,
                                            const std::string& b, const std::string& extra,
                                            int param_degree_cap) {
    BasisGenerator ga = make_generator(sys, a);
    BasisGenerator gb = make_generator(sys, b);
    RationalForm bracket = poisson_bracket(ga.form, gb.form);
    if (bracket.is_zero())
        throw FitInfeasible("{" + a + "," + b + "} vanishes; no structure function");
    RationalForm target = bracket * bracket;

    BasisCaps caps;
    caps.max_generator_degree = (ga.momentum_deg <= 2 && gb.momentum_deg <= 2) ? 3 : 4;
    caps.max_param_degree = param_degree_cap;
    caps.max_momentum_degree = momentum_degree(target);
    caps.max_h_degree = 0;

    std::vector<BasisGenerator> gens;
    gens.push_back(std::move(ga));
    gens.push_back(std::move(gb));
    gens.push_back(make_generator(sys, "H"));
    gens.push_back(make_generator(sys, extra));

    AnsatzBasis basis = enumerate_basis(std::move(gens), caps, false, nullptr);
    FitResult raw = fit(target, basis);
    if (!raw.success())
        throw FitInfeasible("{" + a + "," + b + "}^2 does not fit at the declared caps (" +
                            std::to_string(raw.residual.size()) + " residual terms)");
    StructureFunctionFit out;
    out.a = a;
    out.b = b;
    out.extra = extra;
    out.F = raw.to_genpoly(basis, scalar(1, 2));
    out.raw = std::move(raw);
    return out;
}

namespace {

AnsatzBasis closure_basis(const PhaseSystem& sys, int param_degree_cap, int momentum_cap) {
    std::vector<BasisGenerator> gens;
    for (const auto& integral : sys.integrals) gens.push_back(make_generator(sys, integral.name));
    BasisCaps caps;
    caps.max_generator_degree = 2;
    caps.max_param_degree = param_degree_cap;
    caps.max_momentum_degree = momentum_cap;
    caps.max_h_degree = momentum_cap / 2;
    return enumerate_basis(std::move(gens), caps, true, &sys.hamiltonian);
}

} // namespace

ClosureReport ternary_closure(const PhaseSystem& sys, int param_degree_cap) {
    auto t0 = std::chrono::steady_clock::now();
    const auto& gens = sys.integrals;
    const size_t n = gens.size();

    int momentum_cap = 0;
    for (const auto& g : gens) momentum_cap = std::max(momentum_cap, g.declared_degree);
    momentum_cap = 3 * momentum_cap - 2;

    AnsatzBasis basis = closure_basis(sys, param_degree_cap, momentum_cap);

    // inner brackets {S_j, S_k}, j < k
    std::vector<std::tuple<size_t, size_t, size_t>> triples; // outer, j, k
    std::vector<RationalForm> inner(n * n);
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t j = 0; j < n; ++j)
        for (size_t k = j + 1; k < n; ++k) pairs.emplace_back(j, k);
#pragma omp parallel for schedule(dynamic) if (parallel_enabled())
    for (long pi = 0; pi < static_cast<long>(pairs.size()); ++pi) {
        auto [j, k] = pairs[static_cast<size_t>(pi)];
        inner[j * n + k] = poisson_bracket(gens[j].form, gens[k].form);
    }
    for (auto [j, k] : pairs)
        for (size_t i = 0; i < n; ++i) triples.emplace_back(i, j, k);

    ClosureReport report;
    report.triples.resize(triples.size());
#pragma omp parallel for schedule(dynamic) if (parallel_enabled())
    for (long ti = 0; ti < static_cast<long>(triples.size()); ++ti) {
        auto [i, j, k] = triples[static_cast<size_t>(ti)];
        RationalForm target = poisson_bracket(gens[i].form, inner[j * n + k]);
        FitResult res = fit(target, basis);
        ClosureTriple& triple = report.triples[static_cast<size_t>(ti)];
        triple.outer = gens[i].name;
        triple.inner_a = gens[j].name;
        triple.inner_b = gens[k].name;
        triple.ok = res.success();
        triple.residual_terms = res.residual.size();
        triple.nonunique = !res.unique;
        if (triple.ok) triple.value = res.to_genpoly(basis);
    }
    report.all_ok = std::all_of(report.triples.begin(), report.triples.end(),
                                [](const ClosureTriple& t) { return t.ok; });
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::optional<GenPoly> fit_in_closure_ansatz(const PhaseSystem& sys, const RationalForm& target,
                                             int param_degree_cap) {
    if (target.is_zero()) return GenPoly();
    AnsatzBasis basis = closure_basis(sys, param_degree_cap, momentum_degree(target));
    FitResult res = fit(target, basis);
    if (!res.success()) return std::nullopt;
    return res.to_genpoly(basis);
}

RelationSearchResult linear_relation_search(const PhaseSystem& sys,
                                            const std::vector<std::string>& names,
                                            int param_degree_cap) {
    std::vector<BasisGenerator> gens;
    int momentum_cap = 0;
    for (const std::string& name : names) {
        gens.push_back(make_generator(sys, name));
        momentum_cap = std::max(momentum_cap, gens.back().momentum_deg);
    }
    BasisCaps caps;
    caps.max_generator_degree = 1;
    caps.max_param_degree = param_degree_cap;
    caps.max_momentum_degree = momentum_cap;
    caps.max_h_degree = 0;
    AnsatzBasis basis = enumerate_basis(std::move(gens), caps, false, nullptr);

    Denominator common;
    for (const RationalForm& part : basis.gen_parts) common = den_max(common, part.den());

    std::vector<std::vector<std::pair<Monomial, Scalar>>> columns(basis.elements.size());
    for (size_t i = 0; i < basis.elements.size(); ++i) {
        const BasisElement& e = basis.elements[i];
        columns[i] = scaled_terms(basis.gen_parts[e.gen_part], common, e.param_exp);
    }

    std::vector<Monomial> keys;
    for (const auto& col : columns)
        for (const auto& [m, c] : col) keys.push_back(m);
    std::sort(keys.begin(), keys.end(), monomial_less);
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::unordered_map<Monomial, RowId, MonomialHash> row_of;
    for (size_t i = 0; i < keys.size(); ++i) row_of.emplace(keys[i], static_cast<RowId>(i));

    // A dependency among bihomogeneous columns splits by bidegree, so each
    // class can be searched on its own; one shared echelon otherwise.
    std::map<std::pair<int, int>, std::vector<size_t>> classes;
    if (basis.filterable()) {
        for (size_t i = 0; i < basis.elements.size(); ++i)
            classes[*basis.element_bidegree(basis.elements[i])].push_back(i);
    } else {
        for (size_t i = 0; i < basis.elements.size(); ++i) classes[{0, 0}].push_back(i);
    }

    RelationSearchResult out;
    for (const auto& [bid, members] : classes) {
        EchelonSolver solver;
        for (size_t i : members) {
            SparseVec v;
            v.nz.reserve(columns[i].size());
            for (const auto& [m, c] : columns[i]) v.nz.emplace_back(row_of.at(m), c);
            v.sort_and_combine();
            Combo dep;
            if (!solver.insert(std::move(v), &dep)) {
                out.independent = false;
                for (const auto& [pos, c] : dep) {
                    const BasisElement& e = basis.elements[members[pos]];
                    std::string name = "1";
                    for (size_t g = 0; g < e.gen_exp.size(); ++g)
                        if (e.gen_exp[g] != 0) name = basis.generators[g].name;
                    out.dependency.push_back({name, e.param_exp, c});
                }
                return out;
            }
        }
    }
    return out;
}

std::vector<DiffRow> diff_against_paper(const GenPoly& fitted,
                                        const std::vector<std::string>& printed_terms) {
    GenPoly paper;
    std::vector<std::string> unparseable;
    for (const std::string& text : printed_terms) {
        try {
            paper += lower_gen(text);
        } catch (const Error&) {
            unparseable.push_back(text);
        }
    }

    std::vector<DiffRow> rows;
    std::map<GenMono, std::pair<const Scalar*, const Scalar*>, GenMonoDesc> table;
    for (const auto& [m, c] : paper.terms()) table[m].first = &c;
    for (const auto& [m, c] : fitted.terms()) table[m].second = &c;
    for (const auto& [m, pc] : table) {
        DiffRow row;
        row.monomial = render(m);
        if (pc.first) row.paper = *pc.first;
        if (pc.second) row.fitted = *pc.second;
        if (pc.first && pc.second)
            row.status = *pc.first == *pc.second ? DiffRow::Status::Match
                                                 : DiffRow::Status::Mismatch;
        else if (pc.first)
            row.status = DiffRow::Status::PaperOnly;
        else
            row.status = DiffRow::Status::FittedOnly;
        rows.push_back(std::move(row));
    }
    for (const std::string& text : unparseable)
        rows.push_back({text, std::nullopt, std::nullopt, DiffRow::Status::Unparseable});
    return rows;
}

} // namespace kcp
