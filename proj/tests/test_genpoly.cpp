#include <doctest.h>

#include "kcp/genpoly.hpp"

using namespace kcp;

namespace {
GenPoly sym(GenSym s) { return GenPoly::symbol(s); }
}

TEST_CASE("generator polynomial arithmetic and rendering") {
    GenPoly p = sym(GenSym::A1) * sym(GenSym::A1) * GenPoly::constant(scalar(16)) *
                    sym(GenSym::H) -
                sym(GenSym::A2) * GenPoly::constant(scalar(4)) * sym(GenSym::K) * sym(GenSym::K);
    CHECK(render(p) == "16*A1^2*H - 4*A2*k^2");
    CHECK(p.size() == 2);
    CHECK((p - p).is_zero());
    CHECK(render(lower_gen("16*A1^2*H - 4*A2*k^2")) == render(p));
    CHECK(lower_gen("16*A1^2*H - 4*A2*k^2") == p);
}

TEST_CASE("formal partials") {
    GenPoly p = lower_gen("A1^3*B1 + 2*A1*H - 7*k2");
    CHECK(p.partial(GenSym::A1) == lower_gen("3*A1^2*B1 + 2*H"));
    CHECK(p.partial(GenSym::B1) == lower_gen("A1^3"));
    CHECK(p.partial(GenSym::F).is_zero());
}

TEST_CASE("lower_gen rejects non-generator content") {
    CHECK_THROWS_AS(lower_gen("x + A1"), UnknownGenerator);
    CHECK_THROWS_AS(lower_gen("A1/A2"), NonInvertibleDivisor);
    CHECK(lower_gen("A1/2") == lower_gen("A1") * scalar(1, 2));
    CHECK_THROWS_AS(lower_gen("sqrt(A1)"), InvalidRadical);
    CHECK_THROWS_AS(lower_gen("-64*k3*A1^2*h^2"), UnknownGenerator); // the printed F1 typo
}

TEST_CASE("substitution into phase space is a homomorphism") {
    PhaseSystem sys = builtin("kc3d-nondegenerate");
    const RationalForm& a1 = *sys.find("A1");
    const RationalForm& b2 = *sys.find("B2");

    CHECK(to_phase(lower_gen("A1*B2"), sys) == a1 * b2);
    CHECK(to_phase(lower_gen("A1^2 - 3*k1*B2"), sys) ==
          a1 * a1 - RationalForm::integer(3) * RationalForm::variable(K1) * b2);
    CHECK(to_phase(GenPoly(), sys).is_zero());
}
