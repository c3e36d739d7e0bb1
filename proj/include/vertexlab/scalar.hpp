#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace vertexlab {

using ExactScalar = mpq_class;

// Parses "p/q", "p", or a finite decimal such as "-0.25".
// Canonical n/d; mpq_class(n, d) alone does not reduce.
ExactScalar rational(long n, long d = 1);

ExactScalar parse_scalar(const std::string& text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const ExactScalar& x);

ExactScalar pow(const ExactScalar& base, long exponent);

ExactScalar abs(const ExactScalar& x);

double to_double(const ExactScalar& x);

std::vector<ExactScalar> parse_scalar_list(const std::string& text);

}  // namespace vertexlab
