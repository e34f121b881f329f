#include <doctest.h>

#include <fstream>
#include <sstream>

#include "kcp/paper.hpp"
#include "kcp/verifier.hpp"

using namespace kcp;

namespace {
const PhaseSystem& kc3d() {
    static const PhaseSystem sys = builtin("kc3d-nondegenerate");
    return sys;
}
} // namespace

TEST_CASE("first integral checks") {
    const PhaseSystem& sys = kc3d();
    CHECK(is_first_integral(sys, "B1"));
    CHECK(is_first_integral(sys, "F"));
    // the centrifugal terms break rotational symmetry, so J^2 itself is not
    // conserved; it is only the J^2/2 part of A1
    CHECK_FALSE(is_first_integral(sys, "Jsq"));
    PhaseSystem coulomb = specialize(sys, {{"k1", scalar(0)}, {"k2", scalar(0)},
                                           {"k3", scalar(0)}});
    CHECK(is_first_integral(coulomb, "Jsq"));

    // a non-integral: {H, x} = -dH/dpx != 0
    std::istringstream in("params k\nH = (px^2+py^2+pz^2)/2 - k/sqrt(x^2+y^2+z^2)\nG = x\n");
    PhaseSystem tiny = load_psys(in, "tiny");
    CHECK_FALSE(is_first_integral(tiny, "G"));
    CHECK_THROWS_AS(is_first_integral(tiny, "nope"), UnknownGenerator);

    // the specialized system keeps its integrals
    PhaseSystem degenerate = builtin("kc3d-generalized");
    for (const char* name : {"A1", "A2", "B2"}) CHECK(is_first_integral(degenerate, name));
}

TEST_CASE("commutation table") {
    CommutationTable table = commutation_table(kc3d());
    auto pairs = table.vanishing_pairs();
    REQUIRE(pairs.size() == 4);
    CHECK(pairs[0] == std::pair<std::string, std::string>{"A1", "A2"});
    CHECK(pairs[1] == std::pair<std::string, std::string>{"A1", "B2"});
    CHECK(pairs[2] == std::pair<std::string, std::string>{"A2", "B1"});
    CHECK(pairs[3] == std::pair<std::string, std::string>{"B2", "F"});
    for (size_t i = 0; i < table.names.size(); ++i)
        for (size_t j = 0; j < table.names.size(); ++j)
            CHECK(table.vanishes[i][j] == table.vanishes[j][i]);
}

TEST_CASE("relation checking and the mutation guard") {
    const PhaseSystem& sys = kc3d();

    RelationSpec good{"dF1.dB1", "{A1,{A1,B1}}",
                      "16*H*A1^2 + 4*k^2*A1 - 8*B1*A1 - 16*A2*H*A1 + 16*H*k3*A1 - 4*A2*k^2 + "
                      "4*k^2*k3",
                      "test"};
    CHECK(check_relation(sys, good).status == RelationOutcome::Status::Verbatim);

    // perturbing the rhs by +1 must fail with residual exactly "1"
    RelationSpec bad = good;
    bad.rhs += " + 1";
    RelationOutcome out = check_relation(sys, bad, /*try_correction=*/false);
    CHECK(out.status == RelationOutcome::Status::Failed);
    CHECK(out.residual_terms == 1);
    CHECK(out.residual == "-1");

    // with correction enabled the fitter supplies the true rhs
    RelationOutcome fixed = check_relation(sys, bad, /*try_correction=*/true);
    CHECK(fixed.status == RelationOutcome::Status::Corrected);
    CHECK(fixed.corrected_rhs ==
          "16*A1^2*H - 16*A1*A2*H + 16*A1*H*k3 + 4*A1*k^2 - 4*A2*k^2 + 4*k^2*k3 - 8*A1*B1");

    CHECK_THROWS_AS(check_relation(sys, RelationSpec{"q", "{Q,A1}", "0", ""}),
                    UnknownGenerator);
}

TEST_CASE("shipped relation file matches the embedded table") {
    auto embedded = default_relations();
    auto file = load_relation_file(std::string(KCP_SOURCE_DIR) + "/relations/kc3d.rel");
    REQUIRE(embedded.size() == file.size());
    for (size_t i = 0; i < file.size(); ++i) {
        CHECK(embedded[i].name == file[i].name);
        CHECK(embedded[i].lhs == file[i].lhs);
        CHECK(embedded[i].rhs == file[i].rhs);
    }
    CHECK(file.size() == 35);
}

TEST_CASE("bracket expression evaluation") {
    const PhaseSystem& sys = kc3d();
    SymbolTable symbols = bracket_symbols(sys);
    CHECK(symbols.count("C1") == 1);
    CHECK(symbols.count("D") == 1);

    CHECK(eval_bracket_expr("{A1,A2}", symbols).is_zero());
    CHECK(eval_bracket_expr("{A1,B1} - C1", symbols).is_zero());
    CHECK(eval_bracket_expr("{A1,B1}^2 - C1^2", symbols).is_zero());
    CHECK(eval_bracket_expr("2*H - 2*H", symbols).is_zero());
    CHECK(eval_bracket_expr("{H,{A1,B1}}", symbols).is_zero()); // bracket of integrals
    CHECK_THROWS_AS(eval_bracket_expr("{A1,", symbols), SyntaxError);
    CHECK_THROWS_AS(eval_bracket_expr("{A1,Q}", symbols), UnknownGenerator);
}

TEST_CASE("special implications on the catalog system") {
    const PhaseSystem& sys = kc3d();
    auto f1 = fit_structure_function(sys, "A1", "B1", "A2");
    auto f2 = fit_structure_function(sys, "A2", "B2", "A1");
    auto recs = check_special_implications(sys, f1.F, f2.F);
    REQUIRE(recs.size() == 3);
    CHECK(recs[0].stated_zero);
    CHECK(recs[1].stated_zero);
    CHECK_FALSE(recs[2].stated_zero);  // printed combined form: C1-term sign is off
    CHECK(recs[2].corrected_zero);     // determinant-form orientation holds

    CHECK_THROWS_AS(check_special_implications(sys, GenPoly(), f2.F), FitUnavailable);
}

TEST_CASE("jacobian ranks") {
    const PhaseSystem& sys = kc3d();
    auto points = rank_sample_points(1729, 1);
    REQUIRE(points.size() == 3);

    CHECK(jacobian_rank(sys, {"H"}, points[0]) == 1);
    CHECK(jacobian_rank(sys, {"H", "H"}, points[0]) == 1);

    // rank is invariant under rescaling the momenta
    std::vector<std::string> six = {"H", "A1", "A2", "B1", "B2", "F"};
    RationalPoint pt = points[1];
    int r = jacobian_rank(sys, six, pt);
    pt.px *= scalar(7, 3);
    pt.py *= scalar(7, 3);
    pt.pz *= scalar(7, 3);
    CHECK(jacobian_rank(sys, six, pt) == r);
}
