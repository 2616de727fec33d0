#pragma once

#include "qec/poly.hpp"

#include <vector>

namespace qec {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

// Determinant by expansion over column subsets with memoized minors
// (2^N states, no division). Preferred for the small sparse matrices here.
Polynomial det_minor_expansion(const PolyMatrix& M);

// Fraction-free Bareiss elimination with exact polynomial division.
Polynomial det_bareiss(PolyMatrix M);

// det of M with row i and column j removed
Polynomial minor_det(const PolyMatrix& M, int drop_row, int drop_col);

// all minors det(M_{row|k}) for k = 0..N-1 from a single expansion
std::vector<Polynomial> row_minors(const PolyMatrix& M, int drop_row);

// the s x s minors of a rectangular matrix (s = row count), columns increasing
std::vector<Polynomial> maximal_minors(const PolyMatrix& M);

}  // namespace qec
