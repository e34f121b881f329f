#include "kcp/system.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace kcp {

namespace {

// Built-in catalog. B1 and F are written as the squared-bracket-plus-term
// expressions from the literature, not pre-expanded; lowering expands them.
constexpr const char* kKc3dNondegenerate = R"(# Non-degenerate 3D Kepler-Coulomb system (Verrier-Evans).
params k, k1, k2, k3
integrals A1:2 A2:2 B1:4 B2:2 F:4

J1 = y*pz - z*py
J2 = z*px - x*pz
J3 = x*py - y*px
Jsq = J1^2 + J2^2 + J3^2

H = (px^2 + py^2 + pz^2)/2 - k/sqrt(x^2+y^2+z^2) + k1/x^2 + k2/y^2 + k3/z^2
A1 = Jsq/2 + k1*(x^2+y^2+z^2)/x^2 + k2*(x^2+y^2+z^2)/y^2 + k3*(x^2+y^2+z^2)/z^2
A2 = J3^2/2 + k1*(x^2+y^2)/x^2 + k2*(x^2+y^2)/y^2
B2 = J2^2/2 + k1*z^2/x^2 + k3*x^2/z^2
B1 = (J1*py - J2*px - 2*z*(-k/(2*sqrt(x^2+y^2+z^2)) + k1/x^2 + k2/y^2 + k3/z^2))^2 + (2*k3/z^2)*(x*px + y*py + z*pz)^2
F = (-J1*pz + J3*px - 2*y*(-k/(2*sqrt(x^2+y^2+z^2)) + k1/x^2 + k2/y^2 + k3/z^2))^2 + (2*k2/y^2)*(x*px + y*py + z*pz)^2
)";

const char* kReservedNames[] = {"x", "y", "z", "px", "py", "pz", "r", "sqrt"};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace

const RationalForm* PhaseSystem::find(std::string_view what) const {
    if (what == "H") return &hamiltonian;
    for (const auto& integral : integrals)
        if (integral.name == what) return &integral.form;
    for (const auto& [n, form] : auxiliaries)
        if (n == what) return &form;
    return nullptr;
}

const Integral* PhaseSystem::find_integral(std::string_view what) const {
    for (const auto& integral : integrals)
        if (integral.name == what) return &integral;
    return nullptr;
}

std::vector<std::string> PhaseSystem::generator_names() const {
    std::vector<std::string> names;
    names.reserve(integrals.size());
    for (const auto& integral : integrals) names.push_back(integral.name);
    return names;
}

SymbolTable PhaseSystem::symbols() const {
    SymbolTable table;
    table.emplace("H", hamiltonian);
    for (const auto& integral : integrals) table.emplace(integral.name, integral.form);
    for (const auto& [n, form] : auxiliaries) table.emplace(n, form);
    return table;
}

PhaseSystem load_psys(std::istream& in, const std::string& system_name) {
    PhaseSystem sys;
    sys.name = system_name;
    std::vector<std::pair<std::string, int>> declared_integrals;
    bool have_params = false;
    SymbolTable env;
    std::vector<std::pair<std::string, RationalForm>> defs;

    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.rfind("params", 0) == 0 && (line.size() == 6 || std::isspace(
                static_cast<unsigned char>(line[6])))) {
            if (have_params) throw Error("duplicate params header (line " + std::to_string(lineno) + ")");
            have_params = true;
            for (const std::string& p : split(line.substr(6), ',')) {
                auto v = var_from_name(p);
                if (!v || !is_param_var(*v))
                    throw UnknownParameter("parameter must be one of k, k1, k2, k3: " + p);
                sys.parameters.push_back(p);
            }
            continue;
        }
        if (line.rfind("integrals", 0) == 0) {
            std::stringstream ss(line.substr(9));
            std::string item;
            while (ss >> item) {
                size_t colon = item.find(':');
                if (colon == std::string::npos)
                    throw Error("integrals entries are name:degree (line " + std::to_string(lineno) + ")");
                declared_integrals.emplace_back(item.substr(0, colon),
                                                std::stoi(item.substr(colon + 1)));
            }
            continue;
        }

        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw Error("expected `name = expression` (line " + std::to_string(lineno) + ")");
        std::string name = trim(line.substr(0, eq));
        std::string body = line.substr(eq + 1);
        if (name.empty()) throw Error("missing name (line " + std::to_string(lineno) + ")");
        for (const char* reserved : kReservedNames)
            if (name == reserved) throw Error("cannot redefine reserved symbol " + name);
        if (std::find(sys.parameters.begin(), sys.parameters.end(), name) != sys.parameters.end())
            throw Error("cannot redefine parameter " + name);
        if (env.count(name)) throw Error("duplicate definition of " + name);
        if (!have_params) throw Error("params header must precede definitions");

        RationalForm value = lower(parse(body), sys.parameters, env);
        env.emplace(name, value);
        defs.emplace_back(name, std::move(value));
    }

    auto take = [&defs](const std::string& name) -> RationalForm* {
        for (auto& [n, f] : defs)
            if (n == name) return &f;
        return nullptr;
    };

    RationalForm* h = take("H");
    if (!h) throw Error("system must define H");
    sys.hamiltonian = *h;

    if (declared_integrals.empty()) {
        for (const auto& [n, f] : defs) {
            if (n == "H" || n == "J1" || n == "J2" || n == "J3" || n == "Jsq") continue;
            declared_integrals.emplace_back(n, momentum_degree(f));
        }
    }
    for (const auto& [n, deg] : declared_integrals) {
        RationalForm* f = take(n);
        if (!f) throw Error("declared integral " + n + " is not defined");
        int actual = momentum_degree(*f);
        if (actual != deg)
            throw Error("integral " + n + " declared momentum degree " + std::to_string(deg) +
                        " but has degree " + std::to_string(actual));
        sys.integrals.push_back({n, *f, deg});
    }
    for (auto& [n, f] : defs) {
        if (n == "H" || sys.find_integral(n)) continue;
        sys.auxiliaries.emplace_back(n, std::move(f));
    }
    return sys;
}

PhaseSystem load_psys_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open system file: " + path);
    std::string name = path;
    if (size_t slash = name.find_last_of('/'); slash != std::string::npos)
        name = name.substr(slash + 1);
    if (name.size() > 5 && name.substr(name.size() - 5) == ".psys") name.resize(name.size() - 5);
    return load_psys(in, name);
}

std::vector<std::string> builtin_names() { return {"kc3d-nondegenerate", "kc3d-generalized"}; }

PhaseSystem builtin(const std::string& name) {
    static const PhaseSystem nondegenerate = [] {
        std::istringstream in(kKc3dNondegenerate);
        return load_psys(in, "kc3d-nondegenerate");
    }();
    if (name == "kc3d-nondegenerate") return nondegenerate;
    if (name == "kc3d-generalized") {
        PhaseSystem sys = specialize(nondegenerate, {{"k3", scalar(0)}});
        sys.name = "kc3d-generalized";
        return sys;
    }
    throw UnknownSystem("unknown builtin system: " + name);
}

PhaseSystem specialize(const PhaseSystem& sys, const std::map<std::string, Scalar>& assignment) {
    std::vector<std::pair<Var, Scalar>> subs;
    for (const auto& [name, value] : assignment) {
        if (std::find(sys.parameters.begin(), sys.parameters.end(), name) == sys.parameters.end())
            throw UnknownParameter("not a parameter of " + sys.name + ": " + name);
        subs.emplace_back(*var_from_name(name), value);
    }
    auto apply = [&subs](RationalForm f) {
        for (const auto& [v, value] : subs) f = substitute_param(f, v, value);
        return f;
    };

    PhaseSystem out;
    out.name = sys.name;
    for (const std::string& p : sys.parameters)
        if (!assignment.count(p)) out.parameters.push_back(p);
    out.hamiltonian = apply(sys.hamiltonian);
    for (const auto& integral : sys.integrals) {
        RationalForm f = apply(integral.form);
        int degree = f.is_zero() ? 0 : momentum_degree(f);
        out.integrals.push_back({integral.name, std::move(f), degree});
    }
    for (const auto& [n, f] : sys.auxiliaries) out.auxiliaries.emplace_back(n, apply(f));
    return out;
}

PhaseSystem load_system(const std::string& name_or_path) {
    if (name_or_path.size() > 5 &&
        name_or_path.substr(name_or_path.size() - 5) == ".psys")
        return load_psys_file(name_or_path);
    return builtin(name_or_path);
}

} // namespace kcp
