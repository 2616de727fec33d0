#pragma once

#include "qec/jacobian.hpp"
#include "qec/polymatrix.hpp"

#include <optional>

namespace qec {

struct RelationViolated : QecError { using QecError::QecError; };
struct BinomNotInvertible : QecError { using QecError::QecError; };

// M[i][j] = dG_i / dZ_j with Z = (Y_0..Y_r, X_0..X_n)
PolyMatrix jacobi_matrix(const JacobianSystem& sys);

struct CtildeData {
    std::vector<Polynomial> row0_minors;  // det(M_{0|k}), k = 0..n+r+1
    Polynomial Ctilde;
    int pair_i = 0, pair_j = 0;           // constructing pair
};

// Exact division from one pair, then the relation
//   (m+1) Y_i X_j C~ = (-1)^j det(M_{0|j+r+1}) Y_i + (-1)^(r+i) det(M_{0|i}) X_j
// is checked for every i in 0..r, j in 0..n.
CtildeData construct_Ctilde(const JacobianSystem& sys);

// left side minus right side of the relation for one pair (zero when it holds)
Polynomial ctilde_defect(const JacobianSystem& sys, const CtildeData& c, int i, int j);

// The trace functional. AB = lambda*C in J^rho gives
//   Tr = (-1)^(r+1) m^(n+1) binom(n+r, r) lambda.
// When J^rho is not one dimensional (n = r+1) the same lambda is read off in
// the one dimensional top piece of J~ through D -> D * prod(Y) * prod(X).
class TraceFunctional {
public:
    enum class Route { Jrho, Jtilde };

    static TraceFunctional build(const JacobianSystem& sys, std::size_t max_columns = 200000);

    Route route() const { return route_; }
    const QuotientPiece& Jrho() const { return *jrho_; }
    const QuotientPiece& Jtilde() const { return *jtilde_; }
    const CtildeData& ctilde() const { return ct_; }
    // C as coordinates on the J^rho basis (only on the Jrho route)
    const std::vector<Scalar>& C_coords() const { return c_coords_; }
    std::optional<Polynomial> C() const;
    Scalar unit() const { return unit_; }

    // lambda with D = lambda*C, D of bidegree rho
    Scalar lambda(const Polynomial& D) const;
    // same lambda computed in J~ (available on both routes)
    Scalar lambda_via_Jtilde(const Polynomial& D) const;
    Scalar trace(const Polynomial& D) const;
    Scalar trace_pair(const Polynomial& A, const Polynomial& B) const;

    // C / (m^n binom(n+r,r)) on the J^rho basis
    std::vector<Scalar> scheja_storch_generator() const;

private:
    std::shared_ptr<const JacobianSystem> sys_;
    Route route_ = Route::Jrho;
    std::shared_ptr<QuotientPiece> jrho_, jtilde_;
    CtildeData ct_;
    std::vector<Scalar> c_coords_;
    Scalar ctilde_coord_;
    Polynomial prod_;
    Scalar unit_;
};

// m^n binom(n+r, r), the divisor of C in the generator; BinomNotInvertible
// when the binomial vanishes in k
Scalar generator_normalizer(const Field& k, int n, int r, int m);

// (-1)^(r+1) m^(n+1) binom(n+r, r) in the base field
Scalar trace_unit(const Field& k, int n, int r, int m);

using ScalarMatrix = std::vector<std::vector<Scalar>>;

// Gram matrix of the trace pairing on the quotient basis of `middle`
ScalarMatrix primitive_gram(const TraceFunctional& tf, const QuotientPiece& middle);

mpz_class binomial(int n, int k);

}  // namespace qec
