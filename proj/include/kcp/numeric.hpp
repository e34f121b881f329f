#pragma once

// Floating-point cross-validation of the symbolic kernel: IEEE-double
// evaluation of compiled forms, central-difference bracket checks, and
// conservation drift along RK4 trajectories.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kcp/form.hpp"
#include "kcp/system.hpp"

namespace kcp {

// Reject points closer than this to the singular planes x=0, y=0, z=0 or
// to the origin (the potential has 1/x^2, 1/y^2, 1/z^2 and 1/r poles).
inline constexpr double kSingularMargin = 1e-3;

struct PhasePoint {
    double x = 0, y = 0, z = 0, px = 0, py = 0, pz = 0;
    std::map<std::string, double> params; // k, k1, k2, k3 values
};

// Flat term list for fast repeated evaluation; r is the positive root.
class CompiledForm {
public:
    CompiledForm() = default;
    explicit CompiledForm(const RationalForm& f);
    double eval(const PhasePoint& pt) const; // throws SingularPoint inside the margin

private:
    struct Term {
        double c;
        std::array<int16_t, kNumVars> e;
    };
    std::vector<Term> terms_;
    Denominator den_;
};

double eval_float(const RationalForm& f, const PhasePoint& pt);

// Central-difference estimate of sum_i(df/dq_i dg/dp_i - df/dp_i dg/dq_i)
// against the compiled symbolic bracket; returns |fd - sym| / max(1, |sym|).
double fd_bracket_check(const RationalForm& f, const RationalForm& g, const PhasePoint& pt,
                        double h);

struct Trajectory {
    double step = 0;
    std::string integrator = "rk4";
    std::vector<PhasePoint> samples; // uniform step, duration/step + 1 entries
};

// Classical fixed-step RK4 on qdot = dH/dp, pdot = -dH/dq; the right-hand
// side is compiled once from the symbolic derivatives.
Trajectory integrate(const PhaseSystem& sys, const PhasePoint& start, double step,
                     double duration);

struct DriftRecord {
    std::string integral;
    double drift;
};

// Per integral (H first): max_t |S(t) - S(0)| / max(1, |S(0)|).
std::vector<DriftRecord> conservation_report(const PhaseSystem& sys, const Trajectory& traj);

// The documented default: regular, bound-state energy for the catalog system.
PhasePoint default_numeric_point();

// Seeded regular points with dyadic coordinates (exactly representable in
// binary, so rational and float evaluations can be compared tightly).
std::vector<PhasePoint> seeded_points(uint64_t seed, size_t count);
RationalPoint to_rational_point(const PhasePoint& pt);

} // namespace kcp
