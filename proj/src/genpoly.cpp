#include "kcp/genpoly.hpp"

#include <sstream>

namespace kcp {

namespace {
constexpr const char* kGenSymNames[kNumGenSyms] = {"A1", "A2", "B1", "B2", "F",
                                                   "H",  "k",  "k1", "k2", "k3"};
}

const char* gensym_name(GenSym s) { return kGenSymNames[static_cast<int>(s)]; }

std::optional<GenSym> gensym_from_name(std::string_view name) {
    for (int i = 0; i < kNumGenSyms; ++i)
        if (name == kGenSymNames[i]) return static_cast<GenSym>(i);
    return std::nullopt;
}

bool genmono_less(const GenMono& a, const GenMono& b) {
    int ga = a.grade(), gb = b.grade();
    if (ga != gb) return ga < gb;
    for (int i = 0; i < kNumGenSyms; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    return false;
}

GenPoly GenPoly::constant(Scalar c) {
    GenPoly p;
    if (c != 0) p.terms_.emplace(GenMono{}, std::move(c));
    return p;
}

GenPoly GenPoly::symbol(GenSym s) {
    GenMono m;
    m.e[static_cast<int>(s)] = 1;
    return monomial(m, scalar(1));
}

GenPoly GenPoly::monomial(GenMono m, Scalar c) {
    GenPoly p;
    if (c != 0) p.terms_.emplace(m, std::move(c));
    return p;
}

const Scalar* GenPoly::coefficient(const GenMono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? nullptr : &it->second;
}

void GenPoly::add_term(const GenMono& m, const Scalar& c) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

GenPoly GenPoly::operator-() const {
    GenPoly p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
}

GenPoly operator+(const GenPoly& f, const GenPoly& g) {
    GenPoly p = f;
    for (const auto& [m, c] : g.terms()) p.add_term(m, c);
    return p;
}

GenPoly operator-(const GenPoly& f, const GenPoly& g) {
    GenPoly p = f;
    for (const auto& [m, c] : g.terms()) p.add_term(m, -c);
    return p;
}

GenPoly operator*(const GenPoly& f, const GenPoly& g) {
    GenPoly p;
    for (const auto& [ma, ca] : f.terms())
        for (const auto& [mb, cb] : g.terms()) {
            GenMono m;
            for (int i = 0; i < kNumGenSyms; ++i)
                m.e[i] = static_cast<uint8_t>(ma.e[i] + mb.e[i]);
            p.add_term(m, ca * cb);
        }
    return p;
}

GenPoly operator*(const GenPoly& f, const Scalar& c) {
    GenPoly p;
    if (c == 0) return p;
    for (const auto& [m, coeff] : f.terms()) p.add_term(m, coeff * c);
    return p;
}

GenPoly pow(const GenPoly& f, int n) {
    GenPoly out = GenPoly::constant(scalar(1));
    for (int i = 0; i < n; ++i) out = out * f;
    return out;
}

GenPoly GenPoly::partial(GenSym s) const {
    int idx = static_cast<int>(s);
    GenPoly out;
    for (const auto& [m, c] : terms_) {
        if (m.e[idx] == 0) continue;
        GenMono d = m;
        d.e[idx] = static_cast<uint8_t>(d.e[idx] - 1);
        out.add_term(d, c * m.e[idx]);
    }
    return out;
}

RationalForm to_phase(const GenPoly& p, const PhaseSystem& sys) {
    // memoized powers of each symbol's phase-space expression
    std::array<std::vector<RationalForm>, kNumGenSyms> powers;
    auto power_of = [&](int sym, int e) -> const RationalForm& {
        auto& cache = powers[sym];
        if (cache.empty()) {
            RationalForm base;
            GenSym s = static_cast<GenSym>(sym);
            if (s == GenSym::K) base = RationalForm::variable(K);
            else if (s == GenSym::K1) base = RationalForm::variable(K1);
            else if (s == GenSym::K2) base = RationalForm::variable(K2);
            else if (s == GenSym::K3) base = RationalForm::variable(K3);
            else {
                const RationalForm* f = sys.find(kGenSymNames[sym]);
                if (!f) throw UnknownGenerator(std::string("system does not define ") +
                                               kGenSymNames[sym]);
                base = *f;
            }
            cache.push_back(RationalForm::integer(1));
            cache.push_back(std::move(base));
        }
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * cache[1]);
        return cache[static_cast<size_t>(e)];
    };

    std::vector<RationalForm> pieces;
    for (const auto& [m, c] : p.terms()) {
        RationalForm t = RationalForm::constant(c);
        for (int i = 0; i < kNumGenSyms; ++i)
            if (m.e[i] != 0) t *= power_of(i, m.e[i]);
        pieces.push_back(std::move(t));
    }
    std::vector<const RationalForm*> ptrs;
    std::vector<int> signs(pieces.size(), 1);
    for (const auto& piece : pieces) ptrs.push_back(&piece);
    return linear_combination(ptrs, signs);
}

std::string render(const GenMono& m) {
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < kNumGenSyms; ++i) {
        if (m.e[i] == 0) continue;
        if (!first) out << '*';
        first = false;
        out << kGenSymNames[i];
        if (m.e[i] != 1) out << '^' << static_cast<int>(m.e[i]);
    }
    return first ? "1" : out.str();
}

GenPoly lower_gen(const AstPtr& ast) {
    switch (ast->kind) {
        case AstNode::Kind::Number:
            return GenPoly::constant(ast->number);
        case AstNode::Kind::Symbol: {
            if (auto s = gensym_from_name(ast->symbol)) return GenPoly::symbol(*s);
            throw UnknownGenerator("not a generator symbol: " + ast->symbol);
        }
        case AstNode::Kind::Neg:
            return -lower_gen(ast->a);
        case AstNode::Kind::Add:
            return lower_gen(ast->a) + lower_gen(ast->b);
        case AstNode::Kind::Sub:
            return lower_gen(ast->a) - lower_gen(ast->b);
        case AstNode::Kind::Mul:
            return lower_gen(ast->a) * lower_gen(ast->b);
        case AstNode::Kind::Div: {
            GenPoly d = lower_gen(ast->b);
            if (d.size() == 1 && d.terms().begin()->first == GenMono{})
                return lower_gen(ast->a) * (1 / d.terms().begin()->second);
            throw NonInvertibleDivisor("generator expressions may only be divided by constants");
        }
        case AstNode::Kind::Pow: {
            if (ast->exponent < 0)
                throw NonInvertibleDivisor("negative powers are not defined in generator space");
            return pow(lower_gen(ast->a), static_cast<int>(ast->exponent));
        }
        case AstNode::Kind::Sqrt:
            throw InvalidRadical("sqrt is not defined in generator space");
    }
    throw Error("corrupt AST");
}

std::string render(const GenPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Scalar a = c;
        if (first) {
            if (a < 0) { out << '-'; a = -a; }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool trivial = m == GenMono{};
        if (a != 1 || trivial) {
            out << a.get_str();
            if (!trivial) out << '*' << render(m);
        } else {
            out << render(m);
        }
    }
    return out.str();
}

} // namespace kcp
