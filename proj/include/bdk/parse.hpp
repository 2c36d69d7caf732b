#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bdk/blaschke.hpp"
#include "bdk/submodule.hpp"

namespace bdk {

struct ParseError : InvalidInput {
    using InvalidInput::InvalidInput;
};

// Polynomials in z, w with real or imaginary literals ("0.5", "2i", "(0.5+0.1i)") and + - * ^ ( ).
// Whitespace is ignored; a literal or ')' may be followed directly by a factor ("2z", "(1+i)w").
Series2D parse_polynomial(const std::string& text);
// Comma-separated polynomials; commas inside parentheses do not split.
std::vector<Series2D> parse_generators(const std::string& text);
// A constant expression, e.g. "-0.3i" or "(0.1-0.2i)".
cplx parse_complex(const std::string& text);
// "a,b" with each part a constant expression.
BiPoint parse_point(const std::string& text);
// "zeros=0.5,0.3i;gamma=1", or the shorthands "z", "w", "z^d", "w^d".
BlaschkeProduct parse_blaschke(const std::string& text);

} // namespace bdk
