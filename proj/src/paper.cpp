#include "kcp/paper.hpp"

#include "kcp/errors.hpp"

namespace kcp::paper {

// Signed terms, one string per printed term. The F1 "h^2" factor and the two
// anomalous F3 terms are kept exactly as printed; the diff report flags them.
const std::vector<std::string>& printed_f1_terms() {
    static const std::vector<std::string> terms = {
        "4*k^2*A1*B1",
        "-4*k^2*A2*B1",
        "4*k3*k^2*B1",
        "-32*k3*k^2*A1*H",
        "-4*A1*B1^2",
        "16*A1^2*B1*H",
        "-16*A1*A2*B1*H",
        "-64*k3*A1^2*h^2",
        "16*k3*A1*B1*H",
        "-4*k3*k^4"};
    return terms;
}

const std::vector<std::string>& printed_f2_terms() {
    static const std::vector<std::string> terms = {
        "-4*k1*A1^2",
        "4*A2*B2*A1",
        "8*k1*A2*A1",
        "4*k1*B2*A1",
        "-4*k2*B2*A1",
        "8*k1*k3*A1",
        "-4*A2*B2^2",
        "-4*k3*A2*B2",
        "-4*A2^2*B2",
        "-4*k1*A2^2",
        "-4*k1*A2*B2",
        "4*k2*A2*B2",
        "-4*k3*A2^2",
        "-4*k1*k3*B2",
        "8*k2*k3*A2",
        "4*k2*k3*B2",
        "8*k1*k2*k3",
        "-4*k1*k3^2",
        "-4*k1^2*k3",
        "-4*k2^2*k3"};
    return terms;
}

const std::vector<std::string>& printed_f3_terms() {
    static const std::vector<std::string> terms = {
        "4*k^2*A1*F",
        "-4*k^2*B2*F",
        "-4*k1*k^2*F",
        "4*k2*k^2",
        "-32*k2*k^2*F*A1*H",
        "-4*k3*k^2*F",
        "-4*A1*F^2",
        "16*A1^2*F*H",
        "-16*A1*B2*F*H",
        "-16*k1*A1*F*H",
        "-64*k2*A1^2*H^2",
        "16*k2*A1*F*H",
        "-16*k3*A1*F*H",
        "-4*k2*k^4"};
    return terms;
}

const std::vector<std::string>& printed_terms(const std::string& which) {
    if (which == "F1") return printed_f1_terms();
    if (which == "F2") return printed_f2_terms();
    if (which == "F3") return printed_f3_terms();
    throw Error("no printed structure function named " + which);
}

const char* relation_table() {
    static const char* text = R"REL(# Poisson-bracket relation table for the non-degenerate 3D Kepler-Coulomb
# system. Right-hand sides are transcribed verbatim from the printed
# relation list; the verifier reports, per relation, whether the verbatim
# form or a fitted correction holds.

name: vanishing.a1b1-a2
lhs: {{A1,B1},A2}
rhs: 0
source: full-algebra line 1

name: vanishing.a1-a2b2
lhs: {A1,{A2,B2}}
rhs: 0
source: full-algebra line 1

name: vanishing.a1f-b2
lhs: {{A1,F},B2}
rhs: 0
source: full-algebra line 1

name: pi.a1-a2
lhs: {A1,A2}
rhs: 0
source: special-structure vanishing pairs

name: pi.a1-b2
lhs: {A1,B2}
rhs: 0
source: special-structure vanishing pairs

name: pi.a2-b1
lhs: {A2,B1}
rhs: 0
source: special-structure vanishing pairs

name: pi.b2-f
lhs: {B2,F}
rhs: 0
source: special-structure vanishing pairs (block form; prose claims {B1,F}=0 instead)

name: consistency.c1b2
lhs: {{A1,B1},B2} - {A1,{B1,B2}}
rhs: 0
source: special-structure mixed-bracket consistency

name: consistency.c2b1
lhs: {{A2,B2},B1} + {A2,{B1,B2}}
rhs: 0
source: special-structure mixed-bracket consistency

name: dF1.dA1
lhs: {{A1,B1},B1}
rhs: -4*B1^2 + 4*k^2*B1 + 32*A1*H*B1 - 16*A2*H*B1 + 16*H*k3*B1 - 128*A1*H^2*k3 - 32*H*k^2*k3
source: full-algebra dF1/dA1

name: dF1.dB1
lhs: {A1,{A1,B1}}
rhs: 16*H*A1^2 + 4*k^2*A1 - 8*B1*A1 - 16*A2*H*A1 + 16*H*k3*A1 - 4*A2*k^2 + 4*k^2*k3
source: full-algebra dF1/dB1

name: dF2.dA2
lhs: {{A2,B2},B2}
rhs: -4*B2^2 + 4*A1*B2 - 8*A2*B2 - 4*k1*B2 + 4*k2*B2 - 4*k3*B2 + 8*A1*k1 - 8*A2*k1 - 8*A2*k3 + 8*k2*k3
source: full-algebra dF2/dA2

name: dF2.dB2
lhs: {A2,{A2,B2}}
rhs: -4*A2^2 + 4*A1*A2 - 8*B2*A2 - 4*k1*A2 + 4*k2*A2 - 4*k3*A2 + 4*A1*k1 - 4*A1*k2 - 4*k1*k3 + 4*k2*k3
source: full-algebra dF2/dB2

name: dF3.dF
lhs: {{F,A1},A1}
rhs: 16*H*A1^2 + 4*k^2*A1 - 8*F*A1 - 16*B2*H*A1 - 16*H*k1*A1 + 16*H*k2*A1 - 16*H*k3*A1 - 4*B2*k^2 - 4*k^2*k1 + 4*k^2*k2 - 4*k^2*k3
source: full-algebra dF3/dF

name: dF3.dA1
lhs: {F,{F,A1}}
rhs: -4*F^2 + 4*k^2*F + 32*A1*H*F - 16*B2*H*F - 16*H*k1*F + 16*H*k2*F - 16*H*k3*F - 128*A1*H^2*k2 - 32*H*k^2*k2
source: full-algebra dF3/dA1

name: mixed.a1-d.a
lhs: {A1,{B1,B2}}
rhs: -16*H*A1^2 - 4*k^2*A1 + 4*B1*A1 + 4*F*A1 + 16*A2*H*A1 - 16*H*k3*A1 + 4*A2*k^2 + 4*B1*B2 - 4*A2*F + 4*B1*k1 - 4*B1*k2 - 4*k^2*k3 + 4*B1*k3 + 4*F*k3
source: full-algebra {A1,{B1,B2}}

name: mixed.a1-d.b
lhs: {{A1,B1},B2}
rhs: -16*H*A1^2 - 4*k^2*A1 + 4*B1*A1 + 4*F*A1 + 16*A2*H*A1 - 16*H*k3*A1 + 4*A2*k^2 + 4*B1*B2 - 4*A2*F + 4*B1*k1 - 4*B1*k2 - 4*k^2*k3 + 4*B1*k3 + 4*F*k3
source: full-algebra {{A1,B1},B2}

name: mixed.c2-b1.a
lhs: {{A2,B2},B1}
rhs: 16*H*A1^2 + 4*k^2*A1 - 4*B1*A1 - 4*F*A1 - 16*A2*H*A1 - 16*B2*H*A1 - 16*H*k3*A1 - 4*A2*k^2 - 4*B2*k^2 + 4*A2*B1 + 4*B1*B2 + 4*A2*F - 4*k^2*k3 + 4*B1*k3 + 4*F*k3
source: full-algebra {{A2,B2},B1}

name: mixed.c2-b1.b
lhs: {{B1,B2},A2}
rhs: 16*H*A1^2 + 4*k^2*A1 - 4*B1*A1 - 4*F*A1 - 16*A2*H*A1 - 16*B2*H*A1 - 16*H*k3*A1 - 4*A2*k^2 - 4*B2*k^2 + 4*A2*B1 + 4*B1*B2 + 4*A2*F - 4*k^2*k3 + 4*B1*k3 + 4*F*k3
source: full-algebra {{B1,B2},A2}

name: mixed.a2-fa1.a
lhs: {A2,{F,A1}}
rhs: -16*H*A1^2 - 4*k^2*A1 + 4*B1*A1 + 4*F*A1 + 16*B2*H*A1 + 16*H*k1*A1 - 16*H*k2*A1 + 16*H*k3*A1 + 4*B2*k^2 - 4*B1*B2 + 4*A2*F + 4*k^2*k1 - 4*B1*k1 - 4*k^2*k2 + 4*B1*k2 + 4*k^2*k3 - 4*B1*k3 - 4*F*k3
source: full-algebra {A2,{F,A1}}

name: mixed.a2-fa1.b
lhs: {A1,{F,A2}}
rhs: -16*H*A1^2 - 4*k^2*A1 + 4*B1*A1 + 4*F*A1 + 16*B2*H*A1 + 16*H*k1*A1 - 16*H*k2*A1 + 16*H*k3*A1 + 4*B2*k^2 - 4*B1*B2 + 4*A2*F + 4*k^2*k1 - 4*B1*k1 - 4*k^2*k2 + 4*B1*k2 + 4*k^2*k3 - 4*B1*k3 - 4*F*k3
source: full-algebra {A1,{F,A2}}

name: mixed.b1f-a1
lhs: {{B1,F},A1}
rhs: -16*A1*B1*H + 16*B1*B2*H + 16*A1*F*H - 16*A2*F*H + 16*B1*k1*H - 16*B1*k2*H + 16*B1*k3*H + 16*F*k3*H
source: full-algebra {{B1,F},A1}

name: mixed.a1b1-f
lhs: {{A1,B1},F}
rhs: -64*A1^2*H^2 + 64*A1*A2*H^2 + 64*A1*B2*H^2 + 64*A1*k3*H^2 - 16*A1*k^2*H + 16*A2*k^2*H + 16*B2*k^2*H + 16*A1*B1*H - 16*B1*B2*H - 16*B1*k1*H + 16*B1*k2*H + 16*k^2*k3*H - 16*B1*k3*H - 4*B1*F
source: full-algebra {{A1,B1},F}

name: mixed.a1f-b1
lhs: {{A1,F},B1}
rhs: -4*(16*A1^2*H^2 - 16*A1*A2*H^2 - 16*A1*B2*H^2 - 16*A1*k3*H^2 + 4*A1*k^2*H - 4*A2*k^2*H - 4*B2*k^2*H - 4*A1*F*H + 4*A2*F*H - 4*k^2*k3*H - 4*F*k3*H + B1*F)
source: full-algebra {{A1,F},B1}

name: mixed.b1-fa1.a
lhs: {B1,{F,A1}}
rhs: -64*A1^2*H^2 + 64*A1*A2*H^2 + 64*A1*B2*H^2 + 64*A1*k3*H^2 - 16*A1*k^2*H + 16*A2*k^2*H + 16*B2*k^2*H + 16*A1*B1*H - 16*A2*B1*H - 16*B1*B2*H + 16*A1*F*H - 16*A2*F*H + 16*k^2*k3*H - 16*B1*k3*H - 16*F*k3*H
source: full-algebra {B1,{F,A1}}

name: mixed.b1-fa1.b
lhs: {{B1,F},A2}
rhs: -64*A1^2*H^2 + 64*A1*A2*H^2 + 64*A1*B2*H^2 + 64*A1*k3*H^2 - 16*A1*k^2*H + 16*A2*k^2*H + 16*B2*k^2*H + 16*A1*B1*H - 16*A2*B1*H - 16*B1*B2*H + 16*A1*F*H - 16*A2*F*H + 16*k^2*k3*H - 16*B1*k3*H - 16*F*k3*H
source: full-algebra {{B1,F},A2}

name: mixed.a2b2-f
lhs: {{A2,B2},F}
rhs: -16*H*A1^2 - 4*k^2*A1 + 4*B1*A1 + 4*F*A1 + 16*A2*H*A1 + 16*B2*H*A1 + 16*H*k3*A1 + 4*A2*k^2 + 4*B2*k^2 - 4*B1*B2 - 4*A2*F - 4*B2*F - 4*B1*k1 - 4*B1*k2 + 4*k^2*k3 - 4*B1*k3 - 4*F*k3
source: full-algebra {{A2,B2},F} (printed equal to {B2,M} with M undefined; only this rhs is checked)

name: mixed.b1b2-f.a
lhs: {{B1,B2},F}
rhs: 64*A1^2*H^2 - 64*A1*A2*H^2 - 64*A1*B2*H^2 - 64*A1*k3*H^2 + 16*A1*k^2*H - 16*A2*k^2*H - 16*B2*k^2*H - 16*A1*B1*H + 16*B1*B2*H - 16*A1*F*H + 16*A2*F*H + 16*B2*F*H + 16*B1*k1*H + 16*B1*k2*H - 16*k^2*k3*H + 16*B1*k3*H + 16*F*k3*H
source: full-algebra {{B1,B2},F}

name: mixed.b1b2-f.b
lhs: {{B1,F},B2}
rhs: 64*A1^2*H^2 - 64*A1*A2*H^2 - 64*A1*B2*H^2 - 64*A1*k3*H^2 + 16*A1*k^2*H - 16*A2*k^2*H - 16*B2*k^2*H - 16*A1*B1*H + 16*B1*B2*H - 16*A1*F*H + 16*A2*F*H + 16*B2*F*H + 16*B1*k1*H + 16*B1*k2*H - 16*k^2*k3*H + 16*B1*k3*H + 16*F*k3*H
source: full-algebra {{B1,F},B2}

name: mixed.b1f-f
lhs: {{B1,F},F}
rhs: 64*A1*F*H^2 - 64*A2*F*H^2 - 64*B2*F*H^2 - 128*B1*k2*H^2 - 64*F*k3*H^2 + 16*B1*F*H
source: full-algebra {{B1,F},F}

name: mixed.b1f-b1
lhs: {{B1,F},B1}
rhs: -64*A1*B1*H^2 + 64*A2*B1*H^2 + 64*B1*B2*H^2 + 64*B1*k3*H^2 + 128*F*k3*H^2 - 16*B1*F*H
source: full-algebra {{B1,F},B1}

name: mixed.f-fa2
lhs: {F,{F,A2}}
rhs: -4*F^2 + 4*k^2*F - 4*B1*F + 16*A1*H*F + 16*A2*H*F - 16*H*k1*F + 16*H*k2*F - 128*A1*H^2*k2 - 32*H*k^2*k2 + 32*B1*H*k2
source: full-algebra {F,{F,A2}}

name: mixed.a2-fa2
lhs: {A2,{F,A2}}
rhs: 4*A2*k^2 - 4*k1*k^2 + 4*k2*k^2 - 4*A2*B1 - 8*A2*F + 16*A1*A2*H + 4*B1*k1 - 16*A1*H*k1 - 4*B1*k2 + 16*A1*H*k2
source: full-algebra {A2,{F,A2}}

name: mixed.b1-d
lhs: {B1,{B1,B2}}
rhs: -4*B1^2 + 4*k^2*B1 - 4*F*B1 + 16*A1*H*B1 + 16*B2*H*B1 + 32*H*k3*B1 - 128*A1*H^2*k3 - 32*H*k^2*k3 + 32*F*H*k3
source: full-algebra {B1,{B1,B2}}

name: mixed.b2-d
lhs: {B2,{B1,B2}}
rhs: -4*B2*k^2 - 8*k3*k^2 + 8*B1*B2 + 4*B2*F - 16*A1*B2*H + 8*B1*k1 + 8*B1*k3 + 8*F*k3 - 32*A1*H*k3
source: full-algebra {B2,{B1,B2}}
)REL";
    return text;
}

} // namespace kcp::paper
