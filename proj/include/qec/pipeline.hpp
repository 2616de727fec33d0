#pragma once

#include "qec/chern.hpp"
#include "qec/fermat.hpp"
#include "qec/trace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qec {

struct OutOfRange : QecError { using QecError::QecError; };
struct Inconsistent : QecError { using QecError::QecError; };

// Gram block of c_1(1,0)^i c_1(0,1)^(p-i), i = r..0, under the trace on the
// total space: G[i][j] = [i+j = r-1] + m [i+j = r]
std::vector<std::vector<long>> nonprimitive_gram(int n, int r, int m);

struct ChiOptions {
    bool assume_smooth = false;
    AssumptionOptions assumptions;
    std::size_t max_columns = 200000;
};

struct ChiDiagnostics {
    std::string route;  // "odd-dimension", "Jrho" or "Jtilde"
    std::optional<AssumptionReport> assumptions;
    long chern_ci = 0;
    long chern_biproj = 0;
    std::size_t dim_Jrho = 0, dim_Jtilde = 0, dim_middle = 0;
    Bidegree rho{}, middle{};
    long rank_primitive = 0, rank_nonprimitive = 0, rank_Q = 0;
    long hyperbolic_calX = 0;
    std::size_t ctilde_terms = 0;
    std::string ctilde_leading;
    std::string C;          // C on the J^rho basis when available
    std::string trace_unit;
    double seconds = 0;
};

struct ChiResult {
    GWForm chi_X;
    GWForm chi_calX;
    GWForm Q;
    ChiDiagnostics diag;
};

ChiResult compute_chi(const ProblemInstance& inst, const ChiOptions& opt = {});

// chi(total space) = chi(P^(r-1)) chi(P^n) + <-1>^r chi(X)
GWForm recompose_total(const Field& k, int n, int r, const GWForm& chi_X);

struct OracleCheck {
    std::string name;
    std::string expected;
    std::string got;
    bool agree = false;
    bool counted = true;  // uncounted checks are reported only
    std::string note;
};

// diagonal forms sum a_i X_i^m: coefficient rows, when every F_i has that shape
std::optional<FermatInstance> detect_fermat_pair(const ProblemInstance& inst);
std::optional<std::vector<Scalar>> detect_fermat_hypersurface(const ProblemInstance& inst);

// every oracle that applies to the instance
std::vector<OracleCheck> verify_all(const ProblemInstance& inst, const ChiResult& res);

}  // namespace qec
