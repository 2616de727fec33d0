#pragma once

#include "qec/gradedpiece.hpp"

#include <string>
#include <vector>

namespace qec {

struct DegreeMismatch : QecError { using QecError::QecError; };
struct CharacteristicClash : QecError { using QecError::QecError; };
struct InvalidInstance : QecError { using QecError::QecError; };
struct AssumptionFailure : QecError { using QecError::QecError; };

// r+1 forms of degree m in X_0..X_n. Stored in the ring k[Y_0..Y_r, X_0..X_n].
struct ProblemInstance {
    RingPtr ring;
    int n = 0, r = 0, m = 0;
    std::vector<Polynomial> F;

    static ProblemInstance create(const Field& k, int n, int r, int m, const std::vector<std::string>& polys);
    static ProblemInstance from_polys(RingPtr R, int m, std::vector<Polynomial> F);
    const Field& field() const { return ring->field; }
    int dim_X() const { return n - r - 1; }
};

struct JacobianSystem {
    RingPtr ring;
    int n = 0, r = 0, m = 0;
    Polynomial F;                  // sum Y_i F_i
    std::vector<Polynomial> Fy;    // dF/dY_i = F_i
    std::vector<Polynomial> Fx;    // dF/dX_j
    std::vector<Polynomial> G;     // Y_i F_i then X_j dF/dX_j
    Bidegree rho;

    std::vector<Polynomial> J_generators() const;       // F_i and dF/dX_j
    std::vector<Polynomial> Jtilde_generators() const;  // the G's
    Bidegree jtilde_top() const { return rho + Bidegree{r + 1, n + 1}; }
    Polynomial prod_YX() const;
    int middle_q() const { return (n + r - 1) / 2; }
    Bidegree hodge_bidegree(int q) const { return {q - r, (q + 1) * m - (n + 1)}; }
};

JacobianSystem build_system(const ProblemInstance& inst);

QuotientPiece J_piece(const JacobianSystem& sys, Bidegree d, std::size_t max_columns = 200000);
QuotientPiece Jtilde_piece(const JacobianSystem& sys, Bidegree d, std::size_t max_columns = 200000);
QuotientPiece hodge_piece(const JacobianSystem& sys, int q, std::size_t max_columns = 200000);

struct OneDimReport {
    std::size_t dim_Jrho = 0;
    std::size_t dim_Jtilde = 0;
    bool ok() const { return dim_Jrho == 1 && dim_Jtilde == 1; }
};
OneDimReport verify_one_dimensionality(const JacobianSystem& sys, std::size_t max_columns = 200000);

struct AssumptionOptions {
    int dmax = -1;        // ideal-membership search bound; -1 picks (r+1)(m-1)(n+1)
    int hereditary_depth = 1;  // coordinate subsets of size up to this are checked
    bool skip_hereditary = false;
};

struct AssumptionReport {
    enum class Status { Pass, Fail, Inconclusive };
    Status status = Status::Pass;
    bool used_fermat_shortcut = false;
    std::vector<std::string> notes;
    bool passed() const { return status == Status::Pass; }
    std::string status_name() const;
};

AssumptionReport check_assumptions(const ProblemInstance& inst, const AssumptionOptions& opt = {});

// smoothness certificate for a single form in k[X]: partials generate all
// monomials of degree (n+1)(m-2)+1
bool hypersurface_smooth(const Polynomial& f, int nvars_x, int m);

}  // namespace qec
