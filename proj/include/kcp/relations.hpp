#pragma once

// Relation table parsing and bracket-expression evaluation.
//
// Table format: blank-line separated stanzas of
//   name:   <identifier>
//   lhs:    <bracket expression>
//   rhs:    <generator expression, 0 allowed>
//   source: <citation tag>
// with '#' comments.
//
// Bracket expressions extend the DSL with '{f,g}' for the Poisson bracket.
// Names resolve through the supplied symbol table (generators, H,
// auxiliaries, derived names); k, k1, k2, k3 resolve as parameters.
// Products, sums, integer powers and parenthesized groups are allowed;
// division is not (cross-multiplied forms keep everything polynomial).

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kcp/form.hpp"
#include "kcp/parser.hpp"

namespace kcp {

struct RelationSpec {
    std::string name;
    std::string lhs;
    std::string rhs;
    std::string source;
};

std::vector<RelationSpec> parse_relation_table(std::istream& in);
std::vector<RelationSpec> parse_relation_table_text(const std::string& text);
std::vector<RelationSpec> load_relation_file(const std::string& path);
// The shipped table (relations/kc3d.rel), parsed from the embedded copy.
std::vector<RelationSpec> default_relations();

RationalForm eval_bracket_expr(std::string_view text, const SymbolTable& symbols);

} // namespace kcp
