#include "imds/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace imds {

ParseError::ParseError(int line, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg),
      line_(line) {}

namespace {

struct Line {
    int number = 0; // 1-based position in the input
    std::vector<std::string> tokens;
};

struct TokenizedText {
    std::vector<Line> lines;
    int physical_lines = 0;
};

TokenizedText tokenize(const std::string& text) {
    TokenizedText out;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++out.physical_lines;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        Line line;
        line.number = out.physical_lines;
        std::istringstream ls(raw);
        std::string tok;
        while (ls >> tok)
            line.tokens.push_back(tok);
        if (!line.tokens.empty())
            out.lines.push_back(std::move(line));
    }
    return out;
}

// Full-token parse; no trailing characters allowed.
std::uint64_t parse_uint(const std::string& tok, int base, int line,
                         const char* what) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(),
                                     value, base);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line, std::string("invalid ") + what + " '" + tok + "'");
    return value;
}

// "key=value" with a fixed expected key.
std::string keyed_value(const std::string& tok, const char* key, int line) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || tok.substr(0, eq) != key)
        throw ParseError(line, std::string("expected ") + key + "=<value>, got '" +
                                   tok + "'");
    return tok.substr(eq + 1);
}

} // namespace

std::uint32_t parse_poly_literal(const std::string& token, int line) {
    if (token.size() > 2 && token[0] == '0' && (token[1] == 'x' || token[1] == 'X'))
        return std::uint32_t(parse_uint(token.substr(2), 16, line, "hex literal"));
    if (token.size() > 2 && token[0] == '0' && (token[1] == 'b' || token[1] == 'B'))
        return std::uint32_t(parse_uint(token.substr(2), 2, line, "binary literal"));
    throw ParseError(line, "polynomial literal must start with 0x or 0b, got '" +
                               token + "'");
}

Matrix parse_matrix_text(const std::string& text) {
    auto [lines, physical_lines] = tokenize(text);
    size_t at = 0;
    auto need = [&, physical_lines](const char* what) -> const Line& {
        if (at >= lines.size())
            throw ParseError(physical_lines + 1,
                             std::string("unexpected end of input, expected ") +
                                 what);
        return lines[at++];
    };

    const Line& header = need("header 'm=<int> poly=<literal>'");
    if (header.tokens.size() != 2)
        throw ParseError(header.number, "header must be 'm=<int> poly=<literal>'");
    int m = int(parse_uint(keyed_value(header.tokens[0], "m", header.number), 10,
                           header.number, "field degree"));
    std::uint32_t poly = parse_poly_literal(
        keyed_value(header.tokens[1], "poly", header.number), header.number);
    FieldPtr field;
    try {
        field = make_field(m, poly);
    } catch (const std::invalid_argument& e) {
        throw ParseError(header.number, e.what());
    }

    const Line& size_line = need("'n=<int>'");
    if (size_line.tokens.size() != 1)
        throw ParseError(size_line.number, "expected 'n=<int>' on its own line");
    int n = int(parse_uint(keyed_value(size_line.tokens[0], "n", size_line.number),
                           10, size_line.number, "matrix order"));
    if (n < 1 || n > Matrix::max_order)
        throw ParseError(size_line.number, "matrix order must be 1..8");

    std::vector<Elem> cells;
    cells.reserve(size_t(n) * n);
    for (int r = 0; r < n; ++r) {
        const Line& row = need("a matrix row");
        if (int(row.tokens.size()) != n)
            throw ParseError(row.number,
                             "expected " + std::to_string(n) + " entries, got " +
                                 std::to_string(row.tokens.size()));
        for (const auto& tok : row.tokens) {
            std::uint64_t v = parse_uint(tok, 16, row.number, "matrix entry");
            if (v >= field->order())
                throw ParseError(row.number, "entry '" + tok +
                                                 "' is not an element of " +
                                                 field_name(*field));
            cells.push_back(Elem(v));
        }
    }
    if (at != lines.size())
        throw ParseError(lines[at].number, "trailing content after the matrix");
    return Matrix(field, n, cells);
}

Matrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix_text(buf.str());
}

std::string render_matrix(const Matrix& a) {
    char tmp[32];
    std::string out;
    std::snprintf(tmp, sizeof tmp, "m=%d poly=0x%X\n", a.field().degree(),
                  a.field().poly());
    out += tmp;
    out += "n=" + std::to_string(a.order()) + "\n";
    int width = (a.field().degree() + 3) / 4;
    for (int r = 0; r < a.order(); ++r) {
        for (int c = 0; c < a.order(); ++c) {
            std::snprintf(tmp, sizeof tmp, "%0*x", width, a.at(r, c));
            if (c)
                out += ' ';
            out += tmp;
        }
        out += '\n';
    }
    return out;
}

} // namespace imds
