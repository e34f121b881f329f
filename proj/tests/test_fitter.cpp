#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "kcp/fitter.hpp"
#include "kcp/paper.hpp"

using namespace kcp;

namespace {

const PhaseSystem& kc3d() {
    static const PhaseSystem sys = builtin("kc3d-nondegenerate");
    return sys;
}

bool basis_contains(const AnsatzBasis& basis, const std::string& monomial) {
    return std::any_of(basis.elements.begin(), basis.elements.end(),
                       [&](const BasisElement& e) { return render(basis.to_genmono(e)) == monomial; });
}

} // namespace

TEST_CASE("basis enumeration shapes") {
    const PhaseSystem& sys = kc3d();

    // cubic basis over {A2, B2, H} covers the two-generator structure shape
    BasisCaps caps;
    caps.max_generator_degree = 3;
    caps.max_param_degree = 0;
    caps.max_momentum_degree = 6;
    caps.max_h_degree = 0;
    std::vector<BasisGenerator> gens = {make_generator(sys, "A2"), make_generator(sys, "B2"),
                                        make_generator(sys, "H")};
    AnsatzBasis basis = enumerate_basis(std::move(gens), caps, false, nullptr);
    for (const char* mono : {"A2^3", "B2^3", "A2^2*B2", "A2*B2^2", "A2^2*H", "H^3", "1"})
        CHECK(basis_contains(basis, mono));
    CHECK(basis.elements.size() == 20); // all monomials of degree <= 3 in three generators

    // momentum cap 0 with positive-degree generators leaves only the
    // parameter block
    BasisCaps flat;
    flat.max_generator_degree = 2;
    flat.max_param_degree = 1;
    flat.max_momentum_degree = 0;
    flat.max_h_degree = 0;
    AnsatzBasis params_only =
        enumerate_basis({make_generator(sys, "A1")}, flat, false, nullptr);
    for (const BasisElement& e : params_only.elements) CHECK(e.gen_exp[0] == 0);
    CHECK(params_only.elements.size() == 16); // k^a k1^b k2^c k3^d, each exponent <= 1

    // the closure basis must offer quadratic products and H^2 coefficients
    std::vector<BasisGenerator> five;
    for (const auto& in : sys.integrals) five.push_back(make_generator(sys, in.name));
    BasisCaps closure;
    closure.max_generator_degree = 2;
    closure.max_param_degree = 1;
    closure.max_momentum_degree = 10;
    closure.max_h_degree = 5;
    AnsatzBasis cb = enumerate_basis(std::move(five), closure, true, &sys.hamiltonian);
    CHECK(basis_contains(cb, "A1*B1"));
    CHECK(basis_contains(cb, "A1*H^2"));

    BasisCaps huge = closure;
    huge.max_elements = 10;
    std::vector<BasisGenerator> five2;
    for (const auto& in : sys.integrals) five2.push_back(make_generator(sys, in.name));
    CHECK_THROWS_AS(enumerate_basis(std::move(five2), huge, true, &sys.hamiltonian), CapTooLarge);
}

TEST_CASE("fit recovers identities and reports round-trip residuals") {
    const PhaseSystem& sys = kc3d();
    const RationalForm& a1 = *sys.find("A1");
    const RationalForm& a2 = *sys.find("A2");

    BasisCaps caps;
    caps.max_generator_degree = 2;
    caps.max_param_degree = 1;
    caps.max_momentum_degree = 4;
    caps.max_h_degree = 0;
    AnsatzBasis basis = enumerate_basis(
        {make_generator(sys, "A1"), make_generator(sys, "A2"), make_generator(sys, "H")}, caps,
        false, nullptr);

    FitResult hit = fit(a1 * a2, basis);
    REQUIRE(hit.success());
    CHECK(hit.unique);
    CHECK(hit.to_genpoly(basis) == lower_gen("A1*A2"));

    // x*px has odd momentum parity, no even combination can represent it
    RationalForm odd = RationalForm::variable(X) * RationalForm::variable(PX);
    FitResult miss = fit(odd, basis);
    CHECK_FALSE(miss.success());
    CHECK(miss.residual == odd);
    CHECK(miss.coefficients.empty());

    // round trip: expand(fit) + residual = target, also for partial fits
    RationalForm target = a1 * a2 + odd;
    FitResult part = fit(target, basis);
    CHECK(to_phase(part.to_genpoly(basis), sys) + part.residual == target);
}

TEST_CASE("structure function fits reproduce the printed tables") {
    const PhaseSystem& sys = kc3d();

    StructureFunctionFit f2 = fit_structure_function(sys, "A2", "B2", "A1");
    // {A2,B2}^2 = 2 F2; the A1^2 coefficient of F2 is -4 k1, so the fit of
    // the squared bracket itself carries -8 k1
    GenMono a1sq;
    a1sq.e[static_cast<int>(GenSym::A1)] = 2;
    a1sq.e[static_cast<int>(GenSym::K1)] = 1;
    const Scalar* coeff = f2.F.coefficient(a1sq);
    REQUIRE(coeff != nullptr);
    CHECK(*coeff == scalar(-4));

    // degree caps: F2 cubic, F1 and F3 quartic
    StructureFunctionFit f1 = fit_structure_function(sys, "A1", "B1", "A2");
    StructureFunctionFit f3 = fit_structure_function(sys, "A1", "F", "B2");
    auto degree = [](const GenPoly& p) {
        int deg = 0;
        for (const auto& [m, c2] : p.terms()) deg = std::max(deg, m.degree_in_generators());
        return deg;
    };
    CHECK(degree(f2.F) <= 3);
    CHECK(degree(f1.F) <= 4);
    CHECK(degree(f3.F) <= 4);

    // partial-derivative identities, formal partials substituted back
    const RationalForm& a1 = *sys.find("A1");
    const RationalForm& a2 = *sys.find("A2");
    const RationalForm& b1 = *sys.find("B1");
    const RationalForm& b2 = *sys.find("B2");
    const RationalForm& ff = *sys.find("F");
    RationalForm c1 = poisson_bracket(a1, b1);
    RationalForm c2 = poisson_bracket(a2, b2);
    RationalForm cf = poisson_bracket(a1, ff);
    CHECK(poisson_bracket(a1, c1) == to_phase(f1.F.partial(GenSym::B1), sys));
    CHECK(poisson_bracket(b1, c1) == -to_phase(f1.F.partial(GenSym::A1), sys));
    CHECK(poisson_bracket(a2, c2) == to_phase(f2.F.partial(GenSym::B2), sys));
    CHECK(poisson_bracket(b2, c2) == -to_phase(f2.F.partial(GenSym::A2), sys));
    CHECK(poisson_bracket(a1, cf) == to_phase(f3.F.partial(GenSym::F), sys));
    CHECK(poisson_bracket(ff, cf) == -to_phase(f3.F.partial(GenSym::A1), sys));

    // a vanishing bracket has no structure function
    CHECK_THROWS_AS(fit_structure_function(sys, "A1", "A2", "B1"), FitInfeasible);

    // F2 matches the printed table term by term
    auto rows = diff_against_paper(f2.F, paper::printed_f2_terms());
    for (const auto& row : rows) CHECK(row.status == DiffRow::Status::Match);
}

TEST_CASE("closure fits are antisymmetric in the inner pair") {
    const PhaseSystem& sys = kc3d();
    const RationalForm& a1 = *sys.find("A1");
    const RationalForm& b1 = *sys.find("B1");

    RationalForm fwd = poisson_bracket(a1, poisson_bracket(a1, b1));
    RationalForm rev = poisson_bracket(a1, poisson_bracket(b1, a1));
    auto pf = fit_in_closure_ansatz(sys, fwd);
    auto pr = fit_in_closure_ansatz(sys, rev);
    REQUIRE(pf.has_value());
    REQUIRE(pr.has_value());
    CHECK(*pf == -*pr);
    CHECK(*pf == lower_gen("16*H*A1^2 + 4*k^2*A1 - 8*B1*A1 - 16*A2*H*A1 + 16*H*k3*A1 "
                           "- 4*A2*k^2 + 4*k^2*k3"));
}

TEST_CASE("linear relation search") {
    const PhaseSystem& sys = kc3d();

    // a duplicated name is a dependency with coefficients (1, -1)
    auto dup = linear_relation_search(sys, {"A1", "A1"});
    REQUIRE_FALSE(dup.independent);
    REQUIRE(dup.dependency.size() == 2);
    CHECK(dup.dependency[0].coeff == -dup.dependency[1].coeff);
    CHECK(dup.dependency[0].name == "A1");

    // constructed dependency through a derived definition: G = 2*A1 - Jsq
    std::istringstream in(R"(params k, k1, k2, k3
integrals A1:2
J1 = y*pz - z*py
J2 = z*px - x*pz
J3 = x*py - y*px
Jsq = J1^2 + J2^2 + J3^2
H = (px^2 + py^2 + pz^2)/2 - k/sqrt(x^2+y^2+z^2) + k1/x^2 + k2/y^2 + k3/z^2
A1 = Jsq/2 + k1*(x^2+y^2+z^2)/x^2 + k2*(x^2+y^2+z^2)/y^2 + k3*(x^2+y^2+z^2)/z^2
G = 2*A1 - Jsq
)");
    PhaseSystem tiny = load_psys(in, "tiny");
    auto constructed = linear_relation_search(tiny, {"A1", "Jsq", "G"});
    CHECK_FALSE(constructed.independent);

    // the catalog's six integrals admit only the trivial relation
    auto six = linear_relation_search(sys, {"H", "A1", "A2", "B1", "B2", "F"});
    CHECK(six.independent);
}
