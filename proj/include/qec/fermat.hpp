#pragma once

#include "qec/chern.hpp"
#include "qec/gw.hpp"
#include "qec/jacobian.hpp"

#include <string>
#include <vector>

namespace qec {

struct DegenerateCoefficients : InvalidInstance { using InvalidInstance::InvalidInstance; };

// X = V(sum a_i X_i^m, sum b_i X_i^m) in P^n
struct FermatInstance {
    Field field = Field::rationals();
    int n = 2;
    int m = 2;
    std::vector<Scalar> a, b;

    void validate() const;  // throws InvalidInstance / DegenerateCoefficients
    Scalar minor(int i, int j) const;  // a_i b_j - a_j b_i
    // prod_{i != k} (a_k b_i - a_i b_k)
    Scalar d(int k) const;
    ProblemInstance to_problem() const;
};

// closed form with the hyperbolic count fixed by the rank, next to the
// count obtained from the printed constant
struct ClosedForm {
    GWForm form;
    mpq_class printed_h = 0;  // may be fractional
    long rank_h = 0;
    bool printed_consistent() const { return printed_h == rank_h; }
};

// chi of the total space V(Y_0 F_0 + Y_1 F_1) in P^1 x P^n
ClosedForm fermat_total_space_closed_form(const FermatInstance& f);
// chi(X) as printed: <1> + sum <d_k> in the even/even case
ClosedForm fermat_closed_form(const FermatInstance& f);
// chi(X) = <-1> (chi(total) - chi(P^n)) from the total-space form
GWForm fermat_closed_form_descended(const FermatInstance& f);
// quadratic Riemann-Hurwitz for the projection to P^1 (n even)
GWForm riemann_hurwitz_chi(const FermatInstance& f);

// r = 0 generalized Fermat hypersurface sum a_i X_i^m in P^n
ClosedForm levine_hypersurface_closed_form(const Field& k, int n, int m, const std::vector<Scalar>& a);

struct N2TraceForms {
    Scalar e, f;                 // y^m = e, x^m = f on the chart X_2 = 1
    GWForm two_step;             // via two root extensions
    GWForm direct;               // Gram of the trace form on x^i y^j
    GWForm printed_intermediate; // <1> + <-e'> + <-f'> + <e'f'> with the printed e', f'
    GWForm printed_final;        // <1> + sum_i <prod_{j != i}(a_i b_j - a_j b_i)>
    GWForm descended;            // <1> + sum_i <-d_i>
};
N2TraceForms fermat_n2_trace_forms(const FermatInstance& f);
GWForm fermat_n2_trace_form(const FermatInstance& f);

struct JrhoCalculusReport {
    int j = 0, k = 0, l = 0;
    Polynomial A_j;
    bool l_rewrite_ok = true;
    bool vanishing_ok = true;
    bool exponent_bound_ok = true;
    bool swap_lemma_ok = true;
    bool exchange_ok = true;
    bool c_multiple_ok = true;   // C = m^(2n+1)(n+1)(a_j b_k - a_k b_j)(a_j b_l - a_l b_j) A_j
    bool c_multiple_checked = false;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};
// generator calculus of J^rho for Fermat pairs; needs n >= 3
JrhoCalculusReport fermat_jrho_calculus(const FermatInstance& f, int j, int k, int l);

// A_j = X_j^m prod X_i^(m-2) prod_{i != j,k,l} L_i
Polynomial fermat_generator(const FermatInstance& f, const RingPtr& R, int j, int k, int l);
// exchange scalar s with A_j = s A_j'
Scalar fermat_exchange_scalar(const FermatInstance& f, int j, int jp, int k, int l);

}  // namespace qec
