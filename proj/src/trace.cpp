#include "qec/trace.hpp"

namespace qec {

mpz_class binomial(int n, int k) {
    if (k < 0 || n < k) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

PolyMatrix jacobi_matrix(const JacobianSystem& sys) {
    int N = sys.ring->nvars();
    PolyMatrix M(N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) M[i].push_back(derivative(sys.G[i], j));
    return M;
}

namespace {

Polynomial relation_rhs(const JacobianSystem& sys, const std::vector<Polynomial>& minors, int i, int j) {
    const Ring& R = *sys.ring;
    Polynomial a = minors[j + sys.r + 1] * Polynomial::variable(sys.ring, R.y(i));
    Polynomial b = minors[i] * Polynomial::variable(sys.ring, R.x(j));
    Polynomial out = (j % 2) ? -a : a;
    if ((sys.r + i) % 2) out -= b;
    else out += b;
    return out;
}

}  // namespace

Polynomial ctilde_defect(const JacobianSystem& sys, const CtildeData& c, int i, int j) {
    const Ring& R = *sys.ring;
    Monomial yx = Monomial::var(R.y(i)) * Monomial::var(R.x(j));
    Polynomial lhs = c.Ctilde.times_monomial(yx, R.field.from_int(sys.m + 1));
    return lhs - relation_rhs(sys, c.row0_minors, i, j);
}

CtildeData construct_Ctilde(const JacobianSystem& sys) {
    CtildeData c;
    const Ring& R = *sys.ring;
    if (!R.field.invertible(mpz_class(sys.m + 1)))
        throw CharacteristicClash("m+1 is not invertible");
    c.row0_minors = row_minors(jacobi_matrix(sys), 0);
    c.pair_i = sys.r >= 1 ? 1 : 0;
    c.pair_j = 0;
    Polynomial num = relation_rhs(sys, c.row0_minors, c.pair_i, c.pair_j);
    Monomial yx = Monomial::var(R.y(c.pair_i)) * Monomial::var(R.x(c.pair_j));
    Polynomial den = Polynomial::monomial(sys.ring, yx, R.field.from_int(sys.m + 1));
    try {
        c.Ctilde = exact_divide(num, den);
    } catch (const NotDivisible&) {
        throw RelationViolated("C~ numerator is not divisible by (m+1) Y_i X_j for the constructing pair");
    }
    for (int i = 0; i <= sys.r; ++i)
        for (int j = 0; j <= sys.n; ++j)
            if (!ctilde_defect(sys, c, i, j).is_zero())
                throw RelationViolated("C~ relation fails for pair (" + std::to_string(i) + "," +
                                       std::to_string(j) + ")");
    return c;
}

Scalar trace_unit(const Field& k, int n, int r, int m) {
    mpz_class b = binomial(n + r, r);
    mpz_class mp;
    mpz_ui_pow_ui(mp.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(n + 1));
    mpq_class u(mp * b);
    if ((r + 1) % 2) u = -u;
    return k.from_rational(u);
}

TraceFunctional TraceFunctional::build(const JacobianSystem& sys, std::size_t max_columns) {
    TraceFunctional tf;
    tf.sys_ = std::make_shared<const JacobianSystem>(sys);
    const Field& k = sys.ring->field;
    tf.jrho_ = std::make_shared<QuotientPiece>(J_piece(sys, sys.rho, max_columns));
    tf.jtilde_ = std::make_shared<QuotientPiece>(Jtilde_piece(sys, sys.jtilde_top(), max_columns));
    if (tf.jtilde_->dim() != 1)
        throw AssumptionFailure("top piece of J~ has dimension " + std::to_string(tf.jtilde_->dim()));
    tf.ct_ = construct_Ctilde(sys);
    tf.prod_ = sys.prod_YX();
    auto ct = tf.jtilde_->normal_form(tf.ct_.Ctilde);
    tf.ctilde_coord_ = ct[0];
    if (Field::is_zero(tf.ctilde_coord_)) throw AssumptionFailure("C~ vanishes in J~");
    tf.unit_ = trace_unit(k, sys.n, sys.r, sys.m);

    if (tf.jrho_->dim() == 1) {
        tf.route_ = Route::Jrho;
        // C = c*D with psi(D) = D*prod; compare psi(D) with C~ in J~
        Polynomial D = tf.jrho_->basis_element(0);
        Scalar d = tf.jtilde_->normal_form(D * tf.prod_)[0];
        if (Field::is_zero(d)) throw AssumptionFailure("psi maps the J^rho generator to zero");
        tf.c_coords_ = {k.div(tf.ctilde_coord_, d)};
    } else if (sys.n == sys.r + 1) {
        tf.route_ = Route::Jtilde;
    } else {
        throw AssumptionFailure("J^rho has dimension " + std::to_string(tf.jrho_->dim()));
    }
    return tf;
}

std::optional<Polynomial> TraceFunctional::C() const {
    if (route_ != Route::Jrho) return std::nullopt;
    return jrho_->basis_element(0).scaled(c_coords_[0]);
}

Scalar TraceFunctional::lambda_via_Jtilde(const Polynomial& D) const {
    const Field& k = sys_->ring->field;
    if (D.is_zero()) return Scalar(0);
    return k.div(jtilde_->normal_form(D * prod_)[0], ctilde_coord_);
}

Scalar TraceFunctional::lambda(const Polynomial& D) const {
    if (route_ == Route::Jtilde) return lambda_via_Jtilde(D);
    const Field& k = sys_->ring->field;
    if (D.is_zero()) return Scalar(0);
    return k.div(jrho_->normal_form(D)[0], c_coords_[0]);
}

Scalar TraceFunctional::trace(const Polynomial& D) const {
    return sys_->ring->field.mul(unit_, lambda(D));
}

Scalar TraceFunctional::trace_pair(const Polynomial& A, const Polynomial& B) const { return trace(A * B); }

std::vector<Scalar> TraceFunctional::scheja_storch_generator() const {
    if (route_ != Route::Jrho) throw AssumptionFailure("no one dimensional J^rho");
    const Field& k = sys_->ring->field;
    return {k.div(c_coords_[0], generator_normalizer(k, sys_->n, sys_->r, sys_->m))};
}

Scalar generator_normalizer(const Field& k, int n, int r, int m) {
    mpz_class b = binomial(n + r, r);
    if (!k.invertible(b)) throw BinomNotInvertible("binom(n+r, r) vanishes in " + k.name());
    mpz_class mn;
    mpz_ui_pow_ui(mn.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(n));
    return k.from_rational(mpq_class(mn * b));
}

ScalarMatrix primitive_gram(const TraceFunctional& tf, const QuotientPiece& middle) {
    std::size_t d = middle.dim();
    ScalarMatrix G(d, std::vector<Scalar>(d));
    std::vector<Polynomial> basis;
    for (std::size_t a = 0; a < d; ++a) basis.push_back(middle.basis_element(a));
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a; b < d; ++b) {
            G[a][b] = tf.trace_pair(basis[a], basis[b]);
            G[b][a] = G[a][b];
        }
    return G;
}

}  // namespace qec
