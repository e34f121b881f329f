#pragma once

// Named Hamiltonian systems: the built-in Kepler-Coulomb catalog and the
// `.psys` system definition file format.
//
// File format: `#` comments; a `params k, k1, k2, k3` header (names must be
// drawn from the kernel's coefficient ring k, k1, k2, k3); an optional
// `integrals A1:2 A2:2 ...` directive naming the integrals and their
// momentum degrees; then one `name = expression` definition per line, each
// free to use previously defined names. `H` is required.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "kcp/form.hpp"
#include "kcp/parser.hpp"

namespace kcp {

struct Integral {
    std::string name;
    RationalForm form;
    int declared_degree;
};

struct PhaseSystem {
    std::string name;
    std::vector<std::string> parameters;
    RationalForm hamiltonian;
    std::vector<Integral> integrals;                           // generator order
    std::vector<std::pair<std::string, RationalForm>> auxiliaries; // J1, J2, J3, Jsq, ...

    // Looks up H, integrals and auxiliaries by name; nullptr when absent.
    const RationalForm* find(std::string_view what) const;
    const Integral* find_integral(std::string_view what) const;
    std::vector<std::string> generator_names() const;
    // Name -> expression table for lowering text against this system.
    SymbolTable symbols() const;
};

std::vector<std::string> builtin_names();
// "kc3d-nondegenerate" (Verrier-Evans, 4 parameters) or "kc3d-generalized"
// (its k3 = 0 specialization). Throws UnknownSystem otherwise.
PhaseSystem builtin(const std::string& name);

// Exact parameter substitution; assigned parameters leave the parameter list.
PhaseSystem specialize(const PhaseSystem& sys, const std::map<std::string, Scalar>& assignment);

PhaseSystem load_psys(std::istream& in, const std::string& system_name);
PhaseSystem load_psys_file(const std::string& path);
// Builtin name, or a path to a .psys file.
PhaseSystem load_system(const std::string& name_or_path);

} // namespace kcp
