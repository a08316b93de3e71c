#pragma once

#include <string>
#include <vector>

#include "blockenc/matrix.hpp"

namespace blockenc {

// Parse a CSV file of numbers.  Cells may be real ("1.5", "-2e-3") or complex
// literals ("0.5+0.25i", "1-2i", "3i").  Blank lines and lines starting with
// '#' are skipped; rows may differ in length (callers validate shape).
std::vector<std::vector<cplx>> read_csv(const std::string& path);

// Comma-separated, UTF-8, one header row.  Values are pre-rendered strings so
// callers control the exact byte layout (the artifacts must diff cleanly).
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Assemble a rectangular matrix from parsed cells.
Matrix matrix_from_cells(const std::vector<std::vector<cplx>>& cells);

// One numeric cell; used by read_csv and exposed for direct reuse.
cplx parse_cell(const std::string& text);

// Shortest decimal that round-trips the double (stable across runs).
std::string format_real(double x);

} // namespace blockenc
