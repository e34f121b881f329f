#include "kcp/numeric.hpp"

#include <cmath>
#include <random>

namespace kcp {

namespace {

double param_value(const PhasePoint& pt, const char* name) {
    auto it = pt.params.find(name);
    return it == pt.params.end() ? 0.0 : it->second;
}

double ipow(double base, int e) {
    double out = 1.0;
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

} // namespace

CompiledForm::CompiledForm(const RationalForm& f) : den_(f.den()) {
    terms_.reserve(f.size());
    for (const auto& [m, c] : f.terms()) terms_.push_back({c.get_d(), m.e});
}

double CompiledForm::eval(const PhasePoint& pt) const {
    double r2 = pt.x * pt.x + pt.y * pt.y + pt.z * pt.z;
    if (std::abs(pt.x) < kSingularMargin || std::abs(pt.y) < kSingularMargin ||
        std::abs(pt.z) < kSingularMargin || r2 < kSingularMargin * kSingularMargin)
        throw SingularPoint("evaluation point is inside the singularity margin");
    const double vals[kNumVars] = {pt.px, pt.py, pt.pz,
                                   pt.x,  pt.y,  pt.z,
                                   std::sqrt(r2),
                                   param_value(pt, "k"),  param_value(pt, "k1"),
                                   param_value(pt, "k2"), param_value(pt, "k3")};
    double num = 0.0;
    for (const Term& t : terms_) {
        double v = t.c;
        for (int i = 0; i < kNumVars; ++i)
            if (t.e[i] != 0) v *= ipow(vals[i], t.e[i]);
        num += v;
    }
    double den = ipow(pt.x, den_.x) * ipow(pt.y, den_.y) * ipow(pt.z, den_.z) * ipow(r2, den_.s);
    return num / den;
}

double eval_float(const RationalForm& f, const PhasePoint& pt) {
    return CompiledForm(f).eval(pt);
}

namespace {

PhasePoint shifted(const PhasePoint& pt, Var v, double dv) {
    PhasePoint out = pt;
    switch (v) {
        case X: out.x += dv; break;
        case Y: out.y += dv; break;
        case Z: out.z += dv; break;
        case PX: out.px += dv; break;
        case PY: out.py += dv; break;
        case PZ: out.pz += dv; break;
        default: break;
    }
    return out;
}

double central_diff(const CompiledForm& f, const PhasePoint& pt, Var v, double h) {
    return (f.eval(shifted(pt, v, h)) - f.eval(shifted(pt, v, -h))) / (2.0 * h);
}

} // namespace

double fd_bracket_check(const RationalForm& f, const RationalForm& g, const PhasePoint& pt,
                        double h) {
    CompiledForm cf(f), cg(g);
    static constexpr std::pair<Var, Var> pairs[3] = {{X, PX}, {Y, PY}, {Z, PZ}};
    double fd = 0.0;
    for (auto [q, p] : pairs) {
        fd += central_diff(cf, pt, q, h) * central_diff(cg, pt, p, h);
        fd -= central_diff(cf, pt, p, h) * central_diff(cg, pt, q, h);
    }
    double sym = CompiledForm(poisson_bracket(f, g)).eval(pt);
    return std::abs(fd - sym) / std::max(1.0, std::abs(sym));
}

Trajectory integrate(const PhaseSystem& sys, const PhasePoint& start, double step,
                     double duration) {
    if (step <= 0) throw Error("integration step must be positive");

    CompiledForm dq[3] = {CompiledForm(derivative(sys.hamiltonian, PX)),
                          CompiledForm(derivative(sys.hamiltonian, PY)),
                          CompiledForm(derivative(sys.hamiltonian, PZ))};
    CompiledForm dp[3] = {CompiledForm(derivative(sys.hamiltonian, X)),
                          CompiledForm(derivative(sys.hamiltonian, Y)),
                          CompiledForm(derivative(sys.hamiltonian, Z))};

    using State = std::array<double, 6>; // x y z px py pz
    auto to_point = [&start](const State& s) {
        PhasePoint pt = start;
        pt.x = s[0]; pt.y = s[1]; pt.z = s[2];
        pt.px = s[3]; pt.py = s[4]; pt.pz = s[5];
        return pt;
    };
    auto rhs = [&](const State& s) {
        PhasePoint pt = to_point(s);
        State d;
        for (int i = 0; i < 3; ++i) {
            d[i] = dq[i].eval(pt);      // qdot = dH/dp
            d[3 + i] = -dp[i].eval(pt); // pdot = -dH/dq
        }
        return d;
    };

    Trajectory traj;
    traj.step = step;
    long steps = std::lround(duration / step);
    traj.samples.reserve(static_cast<size_t>(steps) + 1);
    State y = {start.x, start.y, start.z, start.px, start.py, start.pz};
    traj.samples.push_back(to_point(y)); // validates the margin via eval below on step 0
    for (long n = 0; n < steps; ++n) {
        State k1 = rhs(y);
        State y2, y3, y4;
        for (int i = 0; i < 6; ++i) y2[i] = y[i] + 0.5 * step * k1[i];
        State k2 = rhs(y2);
        for (int i = 0; i < 6; ++i) y3[i] = y[i] + 0.5 * step * k2[i];
        State k3 = rhs(y3);
        for (int i = 0; i < 6; ++i) y4[i] = y[i] + step * k3[i];
        State k4 = rhs(y4);
        for (int i = 0; i < 6; ++i)
            y[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        traj.samples.push_back(to_point(y));
    }
    return traj;
}

std::vector<DriftRecord> conservation_report(const PhaseSystem& sys, const Trajectory& traj) {
    std::vector<std::pair<std::string, CompiledForm>> forms;
    forms.emplace_back("H", CompiledForm(sys.hamiltonian));
    for (const auto& integral : sys.integrals)
        forms.emplace_back(integral.name, CompiledForm(integral.form));

    std::vector<DriftRecord> out;
    for (auto& [name, form] : forms) {
        double s0 = form.eval(traj.samples.front());
        double drift = 0.0;
        for (const PhasePoint& pt : traj.samples)
            drift = std::max(drift, std::abs(form.eval(pt) - s0));
        out.push_back({name, drift / std::max(1.0, std::abs(s0))});
    }
    return out;
}

PhasePoint default_numeric_point() {
    // Regular bound-state orbit (H ~ -0.85) chosen so that RK4 truncation at
    // step 1e-3 sits well above rounding noise; the order-of-convergence
    // check needs that headroom.
    PhasePoint pt;
    pt.x = 0.5; pt.y = 1.0; pt.z = 1.0;
    pt.px = 0.3; pt.py = -0.4; pt.pz = 0.35;
    pt.params = {{"k", 2.0}, {"k1", 0.05}, {"k2", 0.05}, {"k3", 0.05}};
    return pt;
}

namespace {

// dyadic value in [lo, hi) with denominator 64
double dyadic(std::mt19937_64& rng, double lo, double hi) {
    double u = static_cast<double>(rng() % 64) / 64.0;
    return lo + (hi - lo > 0 ? u * (hi - lo) : 0.0);
}

} // namespace

std::vector<PhasePoint> seeded_points(uint64_t seed, size_t count) {
    // Pythagorean quadruples a^2 + b^2 + c^2 = d^2, dyadically rescaled, so
    // that r = sqrt(x^2+y^2+z^2) is exact in both double and rational
    // arithmetic.
    // Quadruples with d/min(a,b,c) <= 3.5, so the dyadic rescale m/64 can
    // keep every |coordinate| >= 1 while r = d*m/64 stays <= 3.5. That keeps
    // all derivatives O(1), which the h^2-scale finite-difference noise
    // budget relies on.
    static constexpr int kQuadruples[][4] = {
        {1, 2, 2, 3}, {2, 3, 6, 7}, {4, 4, 7, 9}, {6, 6, 7, 11}};
    std::mt19937_64 rng(seed);
    std::vector<PhasePoint> out;
    out.reserve(count);
    while (out.size() < count) {
        const int* q = kQuadruples[rng() % 4];
        int qmin = std::min(q[0], std::min(q[1], q[2]));
        long lo = (64 + qmin - 1) / qmin; // min coordinate >= 1
        long hi = 224 / q[3];             // r <= 3.5
        long m = lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
        double scale = static_cast<double>(m) / 64.0;
        PhasePoint pt;
        pt.x = (rng() % 2 ? 1.0 : -1.0) * q[0] * scale;
        pt.y = (rng() % 2 ? 1.0 : -1.0) * q[1] * scale;
        pt.z = (rng() % 2 ? 1.0 : -1.0) * q[2] * scale;
        pt.px = dyadic(rng, -1.0, 1.0);
        pt.py = dyadic(rng, -1.0, 1.0);
        pt.pz = dyadic(rng, -1.0, 1.0);
        pt.params = {{"k", 1.0 + dyadic(rng, 0.0, 1.0)},
                     {"k1", 0.25 + dyadic(rng, 0.0, 0.5)},
                     {"k2", 0.25 + dyadic(rng, 0.0, 0.5)},
                     {"k3", 0.25 + dyadic(rng, 0.0, 0.5)}};
        out.push_back(std::move(pt));
    }
    return out;
}

RationalPoint to_rational_point(const PhasePoint& pt) {
    auto to_scalar = [](double v) {
        // exact for the seeded points: everything has a small power-of-two
        // denominator times small integers
        long num = std::lround(v * 4096.0);
        if (std::abs(num / 4096.0 - v) > 1e-12)
            throw Error("phase point is not exactly representable over denominator 4096");
        return scalar(num, 4096);
    };
    RationalPoint out;
    out.x = to_scalar(pt.x);
    out.y = to_scalar(pt.y);
    out.z = to_scalar(pt.z);
    out.px = to_scalar(pt.px);
    out.py = to_scalar(pt.py);
    out.pz = to_scalar(pt.pz);
    Scalar s = out.x * out.x + out.y * out.y + out.z * out.z;
    if (mpz_perfect_square_p(s.get_num_mpz_t()) == 0 ||
        mpz_perfect_square_p(s.get_den_mpz_t()) == 0)
        throw InconsistentRadical("x^2+y^2+z^2 is not a rational square at this point");
    Scalar r;
    mpz_sqrt(r.get_num_mpz_t(), s.get_num_mpz_t());
    mpz_sqrt(r.get_den_mpz_t(), s.get_den_mpz_t());
    r.canonicalize();
    out.r = r;
    out.k = to_scalar(param_value(pt, "k"));
    out.k1 = to_scalar(param_value(pt, "k1"));
    out.k2 = to_scalar(param_value(pt, "k2"));
    out.k3 = to_scalar(param_value(pt, "k3"));
    return out;
}

} // namespace kcp
