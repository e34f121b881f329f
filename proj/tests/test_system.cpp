#include <doctest.h>

#include <fstream>
#include <sstream>

#include "kcp/system.hpp"

using namespace kcp;

namespace {
const std::vector<std::string> kParams = {"k", "k1", "k2", "k3"};

RationalForm lower_text(const std::string& text, const SymbolTable& env = {}) {
    return lower(parse(text), kParams, env);
}
} // namespace

TEST_CASE("parse shapes and errors") {
    AstPtr ast = parse("k/r");
    REQUIRE(ast->kind == AstNode::Kind::Div);
    CHECK(ast->a->kind == AstNode::Kind::Symbol);
    CHECK(ast->a->symbol == "k");
    CHECK(ast->b->symbol == "r");

    CHECK_THROWS_AS(parse("2*(x+"), SyntaxError);
    CHECK_THROWS_AS(parse("x + + y"), SyntaxError);
    CHECK_THROWS_AS(parse("x^y"), SyntaxError);
    CHECK_THROWS_AS(parse(""), SyntaxError);

    // location reporting
    try {
        parse("x +\n @");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 2);
    }
}

TEST_CASE("precedence") {
    // ^ binds tighter than unary minus
    CHECK(lower_text("-x^2") == -(lower_text("x") * lower_text("x")));
    CHECK(lower_text("(-x)^2") == lower_text("x^2"));
    CHECK(lower_text("x-y-z") == lower_text("(x-y)-z"));
    CHECK(lower_text("x/y/z") == lower_text("(x/y)/z"));
    CHECK(lower_text("2*x^2") == lower_text("2*(x^2)"));
    CHECK(lower_text("3/2") == RationalForm::constant(scalar(3, 2)));
}

TEST_CASE("lowering rules") {
    CHECK(lower_text("sqrt(x^2+y^2+z^2)") == RationalForm::variable(R));
    CHECK(lower_text("sqrt(z^2+x^2+y^2)") == RationalForm::variable(R));
    CHECK_THROWS_AS(lower_text("sqrt(x)"), InvalidRadical);
    CHECK_THROWS_AS(lower_text("1/(x+y)"), NonInvertibleDivisor);
    CHECK_THROWS_AS(lower_text("q+1"), UnknownSymbol);
    CHECK_THROWS_AS(lower(parse("k2"), {"k", "k1"}), UnknownSymbol);

    RationalForm inv_s = lower_text("1/(x^2+y^2+z^2)");
    CHECK(inv_s * lower_text("x^2+y^2+z^2") == RationalForm::integer(1));
    CHECK(inv_s.den().s == 1);

    // lowering is a homomorphism
    const char* samples[] = {"x*px+1", "k/r", "x^2/y", "(x+y)^3"};
    for (const char* a : samples) {
        for (const char* b : samples) {
            RationalForm fa = lower_text(a), fb = lower_text(b);
            CHECK(lower_text(std::string(a) + "+(" + b + ")") == fa + fb);
            CHECK(lower_text("(" + std::string(a) + ")*(" + b + ")") == fa * fb);
        }
        CHECK(lower_text("(" + std::string(a) + ")^3") == pow(lower_text(a), 3));
    }
}

TEST_CASE("builtin catalog") {
    PhaseSystem sys = builtin("kc3d-nondegenerate");
    CHECK(sys.parameters.size() == 4);
    CHECK(sys.integrals.size() == 5);
    CHECK(sys.auxiliaries.size() == 4);
    CHECK(momentum_degree(sys.hamiltonian) == 2);
    for (const auto& integral : sys.integrals)
        CHECK(momentum_degree(integral.form) == integral.declared_degree);
    CHECK(sys.find_integral("B1")->declared_degree == 4);
    CHECK(sys.find_integral("F")->declared_degree == 4);
    CHECK(sys.find_integral("A1")->declared_degree == 2);

    CHECK_THROWS_AS(builtin("oscillator"), UnknownSystem);

    // eval oracle: A2 at (1,2,2, 0,0,1) with k1=k2=1 is 5*k1 + 5/4*k2 = 25/4
    RationalPoint pt;
    pt.x = scalar(1); pt.y = scalar(2); pt.z = scalar(2);
    pt.px = scalar(0); pt.py = scalar(0); pt.pz = scalar(1);
    pt.r = scalar(3);
    pt.k = scalar(0); pt.k1 = scalar(1); pt.k2 = scalar(1); pt.k3 = scalar(0);
    CHECK(eval_rational(sys.find_integral("A2")->form, pt) == scalar(25, 4));

    // eval oracle: H at rest with k=3, r=3 and no centrifugal terms is -1
    RationalPoint pt2 = pt;
    pt2.pz = scalar(0);
    pt2.k = scalar(3); pt2.k1 = scalar(0); pt2.k2 = scalar(0);
    CHECK(eval_rational(sys.hamiltonian, pt2) == scalar(-1));
}

TEST_CASE("catalog render round trip") {
    PhaseSystem sys = builtin("kc3d-nondegenerate");
    auto check_roundtrip = [&](const RationalForm& f) {
        CHECK(lower(parse(render(f)), sys.parameters) == f);
    };
    check_roundtrip(sys.hamiltonian);
    for (const auto& integral : sys.integrals) check_roundtrip(integral.form);
    for (const auto& [n, f] : sys.auxiliaries) check_roundtrip(f);
}

TEST_CASE("specialize") {
    PhaseSystem sys = builtin("kc3d-nondegenerate");

    PhaseSystem deg = specialize(sys, {{"k3", scalar(0)}});
    RationalForm eq1 = lower(parse("(px^2+py^2+pz^2)/2 - k/sqrt(x^2+y^2+z^2) + k1/x^2 + k2/y^2"),
                             kParams);
    CHECK(deg.hamiltonian == eq1);
    CHECK(deg.parameters == std::vector<std::string>{"k", "k1", "k2"});
    CHECK(deg.integrals.size() == 5);

    PhaseSystem same = specialize(sys, {});
    CHECK(same.hamiltonian == sys.hamiltonian);
    CHECK(same.parameters == sys.parameters);

    CHECK_THROWS_AS(specialize(sys, {{"m", scalar(1)}}), UnknownParameter);

    PhaseSystem gen = builtin("kc3d-generalized");
    CHECK(gen.hamiltonian == eq1);
}

TEST_CASE("psys file matches builtin") {
    PhaseSystem fromFile = load_psys_file(std::string(KCP_SOURCE_DIR) +
                                          "/systems/kc3d-nondegenerate.psys");
    PhaseSystem sys = builtin("kc3d-nondegenerate");
    CHECK(fromFile.hamiltonian == sys.hamiltonian);
    REQUIRE(fromFile.integrals.size() == sys.integrals.size());
    for (size_t i = 0; i < sys.integrals.size(); ++i) {
        CHECK(fromFile.integrals[i].name == sys.integrals[i].name);
        CHECK(fromFile.integrals[i].form == sys.integrals[i].form);
    }
}

TEST_CASE("psys loader errors") {
    auto load_text = [](const std::string& text) {
        std::istringstream in(text);
        return load_psys(in, "test");
    };
    CHECK_THROWS_AS(load_text("params a, b\nH = px^2"), UnknownParameter);
    CHECK_THROWS_AS(load_text("params k\nG = px^2"), Error);          // no H
    CHECK_THROWS_AS(load_text("H = px^2"), Error);                    // no params header
    CHECK_THROWS_AS(load_text("params k\nr = x"), Error);             // reserved
    CHECK_THROWS_AS(load_text("params k\nH = px^2\nH = py^2"), Error);
    CHECK_THROWS_AS(load_text("params k\nintegrals G:4\nH = px^2/2\nG = px^2"), Error);

    PhaseSystem tiny = load_text("params k\nH = (px^2+py^2+pz^2)/2\nG = px");
    CHECK(tiny.integrals.size() == 1);
    CHECK(tiny.integrals[0].name == "G");
    CHECK(tiny.integrals[0].declared_degree == 1);
}
