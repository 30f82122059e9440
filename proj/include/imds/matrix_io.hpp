#pragma once

#include "imds/matrix.hpp"

#include <stdexcept>
#include <string>

namespace imds {

// Parse failure with the 1-based line number of the offending input line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg);
    int line() const { return line_; }

private:
    int line_;
};

// Matrix text format ('#' starts a comment, blank lines are ignored):
//   m=<decimal> poly=<0x... or 0b...>
//   n=<decimal>
//   n lines of n entries, each a bare hex value below 2^m
//
// Example:
//   m=3 poly=0xB
//   n=2
//   2 3
//   3 2
Matrix parse_matrix_text(const std::string& text);
Matrix parse_matrix_file(const std::string& path); // ParseError on bad content

// Renders in the same format; parse_matrix_text(render_matrix(a)) == a.
std::string render_matrix(const Matrix& a);

// "0x1B" / "0b11011" literals (case-insensitive prefix). Throws ParseError
// tagged with `line`.
std::uint32_t parse_poly_literal(const std::string& token, int line);

} // namespace imds
