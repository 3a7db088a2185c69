// File formats and token syntax for the command-line tools: the JSON
// matrix document, the compact field-element syntax "x+y s<d>" with
// rationals "p/q", and fixed 12-significant-digit float formatting for
// reproducible output.

#pragma once

#include <string>

#include "qsys/quat_matrix.hpp"

namespace qsys {

struct MatrixFileData {
    long d = 2;
    FieldElement delta, gamma, form_a;
    unsigned n = 1;
    ExactQuatMatrix entries;
};

// Parse failure with a location trail (JSON pointer-ish) for diagnostics.
struct MatrixParseError : std::runtime_error {
    MatrixParseError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), location(where) {}
    std::string location;
};

// Parses the JSON document {d, delta, gamma, a, n, entries}.  Field
// elements are [x, y] with each coordinate an integer, a decimal string,
// or a [num, den] pair; entries is an (n+1)x(n+1) array of coordinate
// 4-tuples in the basis 1, i, j, ij.
MatrixFileData parse_matrix_file(const std::string& json_text);

// Serializes with rationals in lowest terms, positive denominators, and
// a fixed key order; parse(serialize(m)) == m exactly.
std::string serialize_matrix_file(const MatrixFileData& data);

// "x+y s<d>" tokens: "1+1s2" is 1 + sqrt(2), "-1/2s2" is -(1/2) sqrt(2),
// "3/4" is rational.  Throws MatrixParseError on malformed input or when
// the token names a different d.
FieldElement parse_field_element_token(const std::string& token, long expect_d);

std::string field_element_token(const FieldElement& e);

// %.12g formatting (round-half-even via the runtime's float printing).
std::string format_double12(double v);

// Double rounded through its 12-significant-digit decimal representation;
// keeps JSON numbers reproducible across runs.
double round12(double v);

}  // namespace qsys
