#pragma once

#include "qec/gw.hpp"

#include <vector>

namespace qec {

struct NegativeDimension : QecError { using QecError::QecError; };

// degree of the top Chern class of a complete intersection of the given
// degrees in P^n
long chern_degree_ci(int n, const std::vector<int>& degrees);

// degree of the top Chern class of a smooth (1, m) divisor in P^r x P^n
long chern_degree_biproj(int n, int r, int m);

// chi(P^n) in GW(k); P^{-1} is empty and gives 0
GWForm chi_projective_space(const Field& k, int n);

}  // namespace qec
