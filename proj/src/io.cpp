#include "blockenc/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "blockenc/error.hpp"

namespace blockenc {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_real(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw io_error("cannot parse number '" + text + "'");
    return v;
}

} // namespace

cplx parse_cell(const std::string& raw) {
    const std::string text = trim(raw);
    if (text.empty()) throw io_error("empty CSV cell");
    if (text.back() != 'i' && text.back() != 'I') return cplx(parse_real(text), 0.0);

    // Complex literal: split "a+bi" at the last sign that is not an exponent.
    const std::string body = text.substr(0, text.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        // pure imaginary: "bi", "i", "-i"
        if (body.empty() || body == "+") return cplx(0.0, 1.0);
        if (body == "-") return cplx(0.0, -1.0);
        return cplx(0.0, parse_real(body));
    }
    const std::string im = body.substr(split);
    return cplx(parse_real(body.substr(0, split)),
                (im == "+") ? 1.0 : (im == "-") ? -1.0 : parse_real(im));
}

std::vector<std::vector<cplx>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    std::vector<std::vector<cplx>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<cplx> row;
        std::stringstream ss(t);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(parse_cell(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary); // binary: identical bytes on every platform
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    for (std::size_t j = 0; j < header.size(); ++j)
        out << (j ? "," : "") << header[j];
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw io_error("CSV row width does not match the header");
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << row[j];
        out << '\n';
    }
    if (!out) throw io_error("failed writing '" + path + "'");
}

Matrix matrix_from_cells(const std::vector<std::vector<cplx>>& cells) {
    if (cells.empty()) throw io_error("no data rows");
    const std::size_t n = cells.front().size();
    if (n == 0) throw io_error("empty data row");
    Matrix m(cells.size(), n);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].size() != n) throw io_error("ragged rows; expected a rectangular table");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = cells[i][j];
    }
    return m;
}

std::string format_real(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

} // namespace blockenc
