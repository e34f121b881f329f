#pragma once

// Verbatim data transcribed from the source publication: the printed
// structure functions (kept exactly as printed, typos included, for the
// PAPER vs FITTED diff) and the default relation table.

#include <string>
#include <vector>

namespace kcp::paper {

const std::vector<std::string>& printed_f1_terms();
const std::vector<std::string>& printed_f2_terms();
const std::vector<std::string>& printed_f3_terms();
const std::vector<std::string>& printed_terms(const std::string& which); // "F1", "F2", "F3"

// Text of the shipped relation table (same content as relations/kc3d.rel).
const char* relation_table();

} // namespace kcp::paper
