#include "kcp/form.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kcp/parallel.hpp"

namespace kcp {

namespace {

constexpr const char* kVarNames[kNumVars] = {"px", "py", "pz", "x",  "y", "z",
                                             "r",  "k",  "k1", "k2", "k3"};

// (x^2+y^2+z^2)^d expanded; d is small everywhere this is used.
std::vector<std::pair<Monomial, Scalar>> s_power(int d) {
    std::vector<std::pair<Monomial, Scalar>> out;
    for (int i = 0; i <= d; ++i) {
        for (int j = 0; i + j <= d; ++j) {
            int l = d - i - j;
            // multinomial d! / (i! j! l!)
            mpz_class coeff = 1;
            for (int t = 1; t <= d; ++t) coeff *= t;
            mpz_class div = 1;
            for (int t = 1; t <= i; ++t) div *= t;
            for (int t = 1; t <= j; ++t) div *= t;
            for (int t = 1; t <= l; ++t) div *= t;
            coeff /= div;
            Monomial m;
            m.e[X] = static_cast<int16_t>(2 * i);
            m.e[Y] = static_cast<int16_t>(2 * j);
            m.e[Z] = static_cast<int16_t>(2 * l);
            out.emplace_back(m, Scalar(coeff));
        }
    }
    return out;
}

void add_term(TermMap& acc, const Monomial& m, const Scalar& c) {
    auto [it, inserted] = acc.try_emplace(m, c);
    if (!inserted) it->second += c;
}

// Adds scale * f scaled onto the common denominator `target` into acc.
// target must dominate f.den componentwise.
void accumulate_scaled(TermMap& acc, const RationalForm& f, const Denominator& target,
                       const Scalar& scale) {
    const Denominator& d = f.den();
    Monomial shift;
    shift.e[X] = static_cast<int16_t>(target.x - d.x);
    shift.e[Y] = static_cast<int16_t>(target.y - d.y);
    shift.e[Z] = static_cast<int16_t>(target.z - d.z);
    int ds = target.s - d.s;
    assert(shift.e[X] >= 0 && shift.e[Y] >= 0 && shift.e[Z] >= 0 && ds >= 0);
    if (ds == 0) {
        for (const auto& [m, c] : f.terms()) add_term(acc, m + shift, c * scale);
        return;
    }
    auto sp = s_power(ds);
    for (const auto& [m, c] : f.terms()) {
        Monomial base = m + shift;
        Scalar cs = c * scale;
        for (const auto& [sm, sc] : sp) add_term(acc, base + sm, cs * sc);
    }
}

Denominator max_den(const Denominator& a, const Denominator& b) {
    Denominator d;
    d.x = std::max(a.x, b.x);
    d.y = std::max(a.y, b.y);
    d.z = std::max(a.z, b.z);
    d.s = std::max(a.s, b.s);
    return d;
}

// Orders terms by z-exponent first (descending), used by the division by
// s = x^2+y^2+z^2, which treats z as the main variable (s is monic of
// degree 2 in z).
struct ZMajorLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.e[Z] != b.e[Z]) return a.e[Z] > b.e[Z];
        return monomial_less(a, b);
    }
};

// Exact division of the numerator by s; nullopt when not divisible.
// The r-split (terms with rExp 0 vs 1) never mixes, so one pass covers both.
std::optional<std::vector<RationalForm::Term>> divide_by_s(
    const std::vector<RationalForm::Term>& terms) {
    std::map<Monomial, Scalar, ZMajorLess> work;
    for (const auto& [m, c] : terms) work.emplace(m, c);
    std::vector<RationalForm::Term> quotient;
    while (!work.empty()) {
        auto it = work.begin();
        if (it->first.e[Z] < 2) break;
        Monomial q = it->first;
        q.e[Z] = static_cast<int16_t>(q.e[Z] - 2);
        Scalar c = it->second;
        work.erase(it);
        // subtract c * q * (x^2 + y^2) ; the z^2 part cancelled the head
        for (Var v : {X, Y}) {
            Monomial m = q;
            m.e[v] = static_cast<int16_t>(m.e[v] + 2);
            auto [jt, inserted] = work.try_emplace(m, -c);
            if (!inserted) {
                jt->second -= c;
                if (jt->second == 0) work.erase(jt);
            }
        }
        quotient.emplace_back(q, std::move(c));
    }
    if (!work.empty()) return std::nullopt; // remainder of z-degree <= 1
    return quotient;
}

long long mul_work(const RationalForm& f, const RationalForm& g) {
    return static_cast<long long>(f.size()) * static_cast<long long>(g.size());
}

void mul_term_pair(TermMap& acc, const Monomial& ma, const Scalar& ca, const Monomial& mb,
                   const Scalar& cb) {
    Monomial m = ma + mb;
    Scalar c = ca * cb;
    if (m.e[R] == 2) {
        // r^2 -> x^2 + y^2 + z^2
        m.e[R] = 0;
        for (Var v : {X, Y, Z}) {
            Monomial mv = m;
            mv.e[v] = static_cast<int16_t>(mv.e[v] + 2);
            add_term(acc, mv, c);
        }
        return;
    }
    add_term(acc, m, c);
}

} // namespace

const char* var_name(Var v) { return kVarNames[v]; }

std::optional<Var> var_from_name(const std::string& name) {
    for (int i = 0; i < kNumVars; ++i)
        if (name == kVarNames[i]) return static_cast<Var>(i);
    return std::nullopt;
}

bool monomial_less(const Monomial& a, const Monomial& b) {
    int ga = a.grade(), gb = b.grade();
    if (ga != gb) return ga < gb;
    for (int i = 0; i < kNumVars; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    return false;
}

const Scalar& RationalPoint::get(Var v) const {
    switch (v) {
        case PX: return px;
        case PY: return py;
        case PZ: return pz;
        case X: return x;
        case Y: return y;
        case Z: return z;
        case R: return r;
        case K: return k;
        case K1: return k1;
        case K2: return k2;
        case K3: return k3;
    }
    throw Error("bad variable index");
}

RationalForm RationalForm::constant(Scalar c) {
    RationalForm f;
    if (c != 0) f.terms_.emplace_back(Monomial{}, std::move(c));
    return f;
}

RationalForm RationalForm::variable(Var v) {
    RationalForm f;
    Monomial m;
    m.e[v] = 1;
    f.terms_.emplace_back(m, scalar(1));
    return f;
}

RationalForm RationalForm::make(TermMap terms, Denominator den) {
    RationalForm f;
    f.terms_.reserve(terms.size());
    for (auto& [m, c] : terms)
        if (c != 0) f.terms_.emplace_back(m, std::move(c));
    if (f.terms_.empty()) return f;

    // Cancel monomial denominator factors against the numerator content.
    for (Var v : {X, Y, Z}) {
        int16_t& dv = v == X ? den.x : (v == Y ? den.y : den.z);
        if (dv == 0) continue;
        int16_t mn = f.terms_.front().first.e[v];
        for (const auto& [m, c] : f.terms_) mn = std::min(mn, m.e[v]);
        int16_t cancel = std::min(mn, dv);
        if (cancel > 0) {
            dv = static_cast<int16_t>(dv - cancel);
            for (auto& [m, c] : f.terms_) m.e[v] = static_cast<int16_t>(m.e[v] - cancel);
        }
    }
    while (den.s > 0) {
        auto q = divide_by_s(f.terms_);
        if (!q) break;
        f.terms_ = std::move(*q);
        --den.s;
    }
    std::sort(f.terms_.begin(), f.terms_.end(),
              [](const Term& a, const Term& b) { return monomial_less(b.first, a.first); });
    f.den_ = den;
    return f;
}

RationalForm RationalForm::operator-() const {
    RationalForm f = *this;
    for (auto& [m, c] : f.terms_) c = -c;
    return f;
}

RationalForm operator+(const RationalForm& f, const RationalForm& g) {
    return linear_combination({&f, &g}, {1, 1});
}

RationalForm operator-(const RationalForm& f, const RationalForm& g) {
    return linear_combination({&f, &g}, {1, -1});
}

RationalForm linear_combination(const std::vector<const RationalForm*>& forms,
                                const std::vector<int>& signs) {
    Denominator target;
    for (const RationalForm* f : forms) target = max_den(target, f->den());
    TermMap acc;
    size_t hint = 0;
    for (const RationalForm* f : forms) hint += f->size();
    acc.reserve(hint);
    for (size_t i = 0; i < forms.size(); ++i)
        accumulate_scaled(acc, *forms[i], target, scalar(signs[i]));
    return RationalForm::make(std::move(acc), target);
}

RationalForm mul_serial(const RationalForm& f, const RationalForm& g) {
    Denominator den;
    den.x = static_cast<int16_t>(f.den().x + g.den().x);
    den.y = static_cast<int16_t>(f.den().y + g.den().y);
    den.z = static_cast<int16_t>(f.den().z + g.den().z);
    den.s = static_cast<int16_t>(f.den().s + g.den().s);
    TermMap acc;
    acc.reserve(f.size() + g.size());
    for (const auto& [ma, ca] : f.terms())
        for (const auto& [mb, cb] : g.terms()) mul_term_pair(acc, ma, ca, mb, cb);
    return RationalForm::make(std::move(acc), den);
}

RationalForm mul_parallel(const RationalForm& f, const RationalForm& g) {
#ifndef _OPENMP
    return mul_serial(f, g);
#else
    const auto& a = f.size() >= g.size() ? f : g;
    const auto& b = f.size() >= g.size() ? g : f;
    Denominator den;
    den.x = static_cast<int16_t>(f.den().x + g.den().x);
    den.y = static_cast<int16_t>(f.den().y + g.den().y);
    den.z = static_cast<int16_t>(f.den().z + g.den().z);
    den.s = static_cast<int16_t>(f.den().s + g.den().s);

    int nthreads = std::min(max_threads(), static_cast<int>(a.size()));
    std::vector<TermMap> partial(static_cast<size_t>(std::max(nthreads, 1)));
#pragma omp parallel num_threads(std::max(nthreads, 1))
    {
        int tid = omp_get_thread_num();
        TermMap& acc = partial[static_cast<size_t>(tid)];
        acc.reserve(a.size() / static_cast<size_t>(std::max(nthreads, 1)) + b.size());
#pragma omp for schedule(static)
        for (long i = 0; i < static_cast<long>(a.size()); ++i) {
            const auto& [ma, ca] = a.terms()[static_cast<size_t>(i)];
            for (const auto& [mb, cb] : b.terms()) mul_term_pair(acc, ma, ca, mb, cb);
        }
    }
    TermMap acc = std::move(partial[0]);
    for (size_t t = 1; t < partial.size(); ++t)
        for (auto& [m, c] : partial[t]) add_term(acc, m, c);
    return RationalForm::make(std::move(acc), den);
#endif
}

RationalForm operator*(const RationalForm& f, const RationalForm& g) {
    if (f.is_zero() || g.is_zero()) return RationalForm();
    if (parallel_enabled() && mul_work(f, g) > 1 << 15) return mul_parallel(f, g);
    return mul_serial(f, g);
}

RationalForm& RationalForm::operator+=(const RationalForm& g) { return *this = *this + g; }
RationalForm& RationalForm::operator-=(const RationalForm& g) { return *this = *this - g; }
RationalForm& RationalForm::operator*=(const RationalForm& g) { return *this = *this * g; }

RationalForm scale(const RationalForm& f, const Scalar& c) {
    if (c == 0 || f.is_zero()) return RationalForm();
    // Nonzero coefficient scaling preserves canonicality.
    TermMap acc;
    acc.reserve(f.size());
    for (const auto& [m, coeff] : f.terms()) acc.emplace(m, coeff * c);
    return RationalForm::make(std::move(acc), f.den());
}

RationalForm pow(const RationalForm& f, long n) {
    if (n < 0) return pow(invert(f), -n);
    RationalForm result = RationalForm::integer(1);
    RationalForm base = f;
    while (n > 0) {
        if (n & 1) result *= base;
        base = n > 1 ? base * base : base;
        n >>= 1;
    }
    return result;
}

RationalForm invert(const RationalForm& f) {
    if (f.is_zero()) throw NonInvertibleDivisor("division by zero");
    // Peel explicit s factors so that e.g. x^2*(x^2+y^2+z^2)^2 is accepted.
    std::vector<RationalForm::Term> num = f.terms();
    int peeled = 0;
    while (num.size() > 1) {
        auto q = divide_by_s(num);
        if (!q) throw NonInvertibleDivisor("divisor is not a monomial times a power of x^2+y^2+z^2");
        num = std::move(*q);
        ++peeled;
    }
    const auto& [m, c] = num.front();
    for (Var v : {PX, PY, PZ, K, K1, K2, K3})
        if (m.e[v] != 0)
            throw NonInvertibleDivisor("cannot invert momenta or parameters");

    // 1/(c x^i y^j z^l r^e s^m / (x^a y^b z^g s^d))
    //   = (1/c) x^a y^b z^g s^d r^e / (x^i y^j z^l s^{m+e})
    TermMap acc;
    Monomial top;
    top.e[X] = f.den().x;
    top.e[Y] = f.den().y;
    top.e[Z] = f.den().z;
    top.e[R] = m.e[R];
    Scalar inv = 1 / c;
    if (f.den().s > 0) {
        for (const auto& [sm, sc] : s_power(f.den().s)) add_term(acc, top + sm, inv * sc);
    } else {
        add_term(acc, top, inv);
    }
    Denominator den;
    den.x = m.e[X];
    den.y = m.e[Y];
    den.z = m.e[Z];
    den.s = static_cast<int16_t>(peeled + m.e[R]);
    return RationalForm::make(std::move(acc), den);
}

RationalForm div(const RationalForm& f, const RationalForm& g) { return f * invert(g); }

RationalForm derivative(const RationalForm& f, Var v) {
    if (!is_phase_var(v)) throw Error(std::string("cannot differentiate in ") + var_name(v));
    if (f.is_zero()) return f;

    if (v == PX || v == PY || v == PZ) {
        TermMap acc;
        acc.reserve(f.size());
        for (const auto& [m, c] : f.terms()) {
            if (m.e[v] == 0) continue;
            Monomial d = m;
            d.e[v] = static_cast<int16_t>(d.e[v] - 1);
            add_term(acc, d, c * m.e[v]);
        }
        return RationalForm::make(std::move(acc), f.den());
    }

    const Denominator& den = f.den();
    int16_t dv = v == X ? den.x : (v == Y ? den.y : den.z);
    bool has_radical = false;
    for (const auto& [m, c] : f.terms())
        if (m.e[R] != 0) { has_radical = true; break; }

    if (dv == 0 && den.s == 0 && !has_radical) {
        // plain polynomial in v
        TermMap acc;
        acc.reserve(f.size());
        for (const auto& [m, c] : f.terms()) {
            if (m.e[v] == 0) continue;
            Monomial d = m;
            d.e[v] = static_cast<int16_t>(d.e[v] - 1);
            add_term(acc, d, c * m.e[v]);
        }
        return RationalForm::make(std::move(acc), den);
    }

    // Quotient rule over the common denominator v * s * den:
    //   d(N/D)/dv = [ s*v*dN - N*(a_v*s + 2*d_s*v^2) + Q*v^2*r ] / (v s D)
    // where dN differentiates monomials with r held fixed and Q*r collects
    // the radical terms (dr/dv = v*r/s).
    TermMap acc;
    acc.reserve(4 * f.size());
    for (const auto& [m, c] : f.terms()) {
        // (e_v - a_v) * c on m * s
        long factor = m.e[v] - dv;
        if (factor != 0) {
            Scalar cf = c * factor;
            for (Var w : {X, Y, Z}) {
                Monomial ms = m;
                ms.e[w] = static_cast<int16_t>(ms.e[w] + 2);
                add_term(acc, ms, cf);
            }
        }
        // radical part: + c on m * v^2
        if (m.e[R] != 0) {
            Monomial mv = m;
            mv.e[v] = static_cast<int16_t>(mv.e[v] + 2);
            add_term(acc, mv, c);
        }
        // - 2 d_s c on m * v^2
        if (den.s != 0) {
            Monomial mv = m;
            mv.e[v] = static_cast<int16_t>(mv.e[v] + 2);
            add_term(acc, mv, c * (-2 * den.s));
        }
    }
    Denominator dd = den;
    (v == X ? dd.x : (v == Y ? dd.y : dd.z)) = static_cast<int16_t>(dv + 1);
    dd.s = static_cast<int16_t>(dd.s + 1);
    return RationalForm::make(std::move(acc), dd);
}

RationalForm poisson_bracket(const RationalForm& f, const RationalForm& g) {
    if (f.is_zero() || g.is_zero()) return RationalForm();
    static constexpr std::pair<Var, Var> pairs[3] = {{X, PX}, {Y, PY}, {Z, PZ}};
    std::vector<RationalForm> products;
    products.reserve(6);
    std::vector<int> signs;
    for (auto [q, p] : pairs) {
        products.push_back(derivative(f, q) * derivative(g, p));
        signs.push_back(1);
        products.push_back(derivative(f, p) * derivative(g, q));
        signs.push_back(-1);
    }
    std::vector<const RationalForm*> ptrs;
    for (const auto& prod : products) ptrs.push_back(&prod);
    return linear_combination(ptrs, signs);
}

bool equals(const RationalForm& f, const RationalForm& g) { return f == g; }

int momentum_degree(const RationalForm& f) {
    if (f.is_zero()) throw UndefinedDegree("momentum degree of the zero expression");
    int deg = 0;
    for (const auto& [m, c] : f.terms()) deg = std::max(deg, m.momentum_degree());
    return deg;
}

namespace {

Scalar qpow(const Scalar& base, int exp) {
    Scalar out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

} // namespace

Scalar eval_rational(const RationalForm& f, const RationalPoint& pt) {
    Scalar s = pt.x * pt.x + pt.y * pt.y + pt.z * pt.z;
    if (pt.r * pt.r != s)
        throw InconsistentRadical("r^2 != x^2+y^2+z^2 at the evaluation point");
    const Denominator& den = f.den();
    if ((den.x > 0 && pt.x == 0) || (den.y > 0 && pt.y == 0) || (den.z > 0 && pt.z == 0) ||
        (den.s > 0 && s == 0))
        throw DivisionByZeroAtPoint("denominator vanishes at the evaluation point");
    Scalar num = 0;
    for (const auto& [m, c] : f.terms()) {
        Scalar t = c;
        for (int i = 0; i < kNumVars; ++i)
            if (m.e[i] != 0) t *= qpow(pt.get(static_cast<Var>(i)), m.e[i]);
        num += t;
    }
    Scalar d = qpow(pt.x, den.x) * qpow(pt.y, den.y) * qpow(pt.z, den.z) * qpow(s, den.s);
    return num / d;
}

RationalForm substitute_param(const RationalForm& f, Var v, const Scalar& value) {
    if (!is_param_var(v)) throw UnknownParameter(std::string(var_name(v)) + " is not a parameter");
    TermMap acc;
    acc.reserve(f.size());
    for (const auto& [m, c] : f.terms()) {
        Monomial mm = m;
        Scalar cc = c;
        if (mm.e[v] != 0) {
            cc *= scalar_pow(value, static_cast<unsigned long>(mm.e[v]));
            mm.e[v] = 0;
        }
        add_term(acc, mm, cc);
    }
    return RationalForm::make(std::move(acc), f.den());
}

namespace {

void render_monomial(std::ostringstream& out, const Monomial& m, bool lead_star) {
    bool first = !lead_star;
    for (int i = 0; i < kNumVars; ++i) {
        if (m.e[i] == 0) continue;
        if (!first) out << '*';
        first = false;
        out << kVarNames[i];
        if (m.e[i] != 1) out << '^' << m.e[i];
    }
}

} // namespace

std::string render(const RationalForm& f) {
    if (f.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        Scalar a = c;
        if (first) {
            if (a < 0) { out << '-'; a = -a; }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool trivial_mono = m == Monomial{};
        if (a != 1 || trivial_mono) {
            out << a.get_str();
            render_monomial(out, m, true);
        } else {
            render_monomial(out, m, false);
        }
    }
    const Denominator& den = f.den();
    if (den.trivial()) return out.str();

    std::vector<std::string> factors;
    auto factor = [&](const char* name, int e) {
        if (e == 0) return;
        std::string t = name;
        if (e != 1) t += "^" + std::to_string(e);
        factors.push_back(std::move(t));
    };
    factor("x", den.x);
    factor("y", den.y);
    factor("z", den.z);
    factor("(x^2+y^2+z^2)", den.s);

    std::ostringstream res;
    if (f.size() > 1) res << '(' << out.str() << ')';
    else res << out.str();
    res << '/';
    if (factors.size() == 1) {
        res << factors.front();
    } else {
        res << '(';
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) res << '*';
            res << factors[i];
        }
        res << ')';
    }
    return res.str();
}

std::pair<int, int> monomial_bidegree(const Monomial& m) {
    int lambda = m.e[X] + m.e[Y] + m.e[Z] + m.e[R] + m.e[K] + 2 * (m.e[K1] + m.e[K2] + m.e[K3]);
    int mu = m.e[PX] + m.e[PY] + m.e[PZ] + 2 * m.e[K] + 2 * (m.e[K1] + m.e[K2] + m.e[K3]);
    return {lambda, mu};
}

std::optional<std::pair<int, int>> bidegree(const RationalForm& f) {
    if (f.is_zero()) return std::nullopt;
    const Denominator& den = f.den();
    int dl = den.x + den.y + den.z + 2 * den.s;
    std::optional<std::pair<int, int>> deg;
    for (const auto& [m, c] : f.terms()) {
        auto [l, mu] = monomial_bidegree(m);
        std::pair<int, int> d{l - dl, mu};
        if (!deg) deg = d;
        else if (*deg != d) return std::nullopt;
    }
    return deg;
}

} // namespace kcp
