#include <doctest.h>

#include <cmath>

#include "kcp/numeric.hpp"

using namespace kcp;

namespace {
const PhaseSystem& kc3d() {
    static const PhaseSystem sys = builtin("kc3d-nondegenerate");
    return sys;
}
} // namespace

TEST_CASE("float evaluation") {
    PhasePoint pt;
    pt.x = 1; pt.y = 2; pt.z = 2;
    CHECK(eval_float(RationalForm::variable(R), pt) == doctest::Approx(3.0).epsilon(1e-15));

    PhasePoint singular = pt;
    singular.x = 0.0;
    RationalForm f = div(RationalForm::variable(K1),
                         RationalForm::variable(X) * RationalForm::variable(X));
    CHECK_THROWS_AS(eval_float(f, singular), SingularPoint);

    // agreement with exact evaluation at the seeded points
    const PhaseSystem& sys = kc3d();
    for (const PhasePoint& sp : seeded_points(99, 10)) {
        RationalPoint rp = to_rational_point(sp);
        CHECK(rp.r * rp.r == rp.x * rp.x + rp.y * rp.y + rp.z * rp.z);
        double exact = eval_rational(sys.hamiltonian, rp).get_d();
        CHECK(eval_float(sys.hamiltonian, sp) ==
              doctest::Approx(exact).epsilon(1e-12));
        exact = eval_rational(sys.find_integral("B1")->form, rp).get_d();
        CHECK(eval_float(sys.find_integral("B1")->form, sp) ==
              doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("derivative commutes with evaluation up to fd error") {
    const PhaseSystem& sys = kc3d();
    const RationalForm* forms[] = {&sys.hamiltonian, &sys.find_integral("B1")->form};
    for (const PhasePoint& pt : seeded_points(7, 3)) {
        for (const RationalForm* f : forms) {
            for (Var v : {X, PY}) {
                double h = 1e-5;
                PhasePoint hi = pt, lo = pt;
                (v == X ? hi.x : hi.py) += h;
                (v == X ? lo.x : lo.py) -= h;
                double fd = (eval_float(*f, hi) - eval_float(*f, lo)) / (2 * h);
                double sym = eval_float(derivative(*f, v), pt);
                CHECK(std::abs(fd - sym) / std::max(1.0, std::abs(sym)) < 1e-6);
            }
        }
    }
}

TEST_CASE("finite-difference bracket checks") {
    const PhaseSystem& sys = kc3d();
    auto pts = seeded_points(1729, 4);

    for (const auto& pt : pts) {
        // constant bracket
        CHECK(fd_bracket_check(RationalForm::variable(X), RationalForm::variable(PX), pt, 1e-5) <
              1e-9);
        // vanishing bracket of H with a quartic integral: pure fd noise
        CHECK(fd_bracket_check(sys.hamiltonian, sys.find_integral("B1")->form, pt, 1e-5) < 1e-6);
        // non-vanishing bracket against the symbolic kernel
        CHECK(fd_bracket_check(sys.find_integral("A1")->form, sys.find_integral("B1")->form, pt,
                               1e-5) < 1e-6);
    }
}

TEST_CASE("rk4 integration") {
    const PhaseSystem& sys = kc3d();

    // free particle: exact straight line for RK4
    PhaseSystem free_sys = specialize(sys, {{"k", scalar(0)},
                                            {"k1", scalar(0)},
                                            {"k2", scalar(0)},
                                            {"k3", scalar(0)}});
    PhasePoint p0 = default_numeric_point();
    Trajectory line = integrate(free_sys, p0, 1e-2, 1.0);
    CHECK(line.samples.size() == 101);
    CHECK(std::abs(line.samples.back().x - (p0.x + p0.px)) < 1e-10);
    CHECK(std::abs(line.samples.back().py - p0.py) < 1e-14);

    // zero duration: a single sample
    Trajectory still = integrate(sys, p0, 1e-3, 0.0);
    CHECK(still.samples.size() == 1);

    // bound orbit stays bounded (and never crosses the singular margin,
    // otherwise integrate would throw)
    CHECK(eval_float(sys.hamiltonian, p0) < 0.0);
    Trajectory orbit = integrate(sys, p0, 1e-3, 10.0);
    double rmax = 0;
    for (const auto& s : orbit.samples)
        rmax = std::max(rmax, std::sqrt(s.x * s.x + s.y * s.y + s.z * s.z));
    CHECK(rmax < 25.0);

    // conservation drift on a short run
    auto drifts = conservation_report(sys, orbit);
    REQUIRE(drifts.size() == 6);
    for (const auto& rec : drifts) CHECK(rec.drift < 1e-6);

    // order-4 convergence for the energy
    double h1 = drifts[0].drift;
    double h2 = conservation_report(sys, integrate(sys, p0, 5e-4, 10.0))[0].drift;
    CHECK(h1 / h2 >= 8.0);
    CHECK(h1 / h2 <= 32.0);
}
