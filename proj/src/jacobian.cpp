#include "qec/jacobian.hpp"

#include "qec/polymatrix.hpp"

#include <algorithm>
#include <functional>

namespace qec {

// ---------------------------------------------------------- ProblemInstance

ProblemInstance ProblemInstance::from_polys(RingPtr R, int m, std::vector<Polynomial> F) {
    ProblemInstance inst;
    inst.ring = R;
    inst.n = R->n;
    inst.r = R->r;
    inst.m = m;
    if (m < 2) throw InvalidInstance("degree m must be at least 2");
    if (static_cast<int>(F.size()) != R->r + 1)
        throw InvalidInstance("expected " + std::to_string(R->r + 1) + " forms, got " + std::to_string(F.size()));
    // n = r+1 gives a zero-dimensional X; it is accepted and handled by the
    // second trace route (see pipeline)
    if (R->r > 0 && R->n < R->r + 1)
        throw InvalidInstance("need n >= r+1 (n=" + std::to_string(R->n) + ", r=" + std::to_string(R->r) + ")");
    if (R->r == 0 && R->n < 1) throw InvalidInstance("need n >= 1");
    for (std::size_t i = 0; i < F.size(); ++i) {
        if (F[i].is_zero()) throw DegreeMismatch("form F" + std::to_string(i) + " is zero");
        Bidegree b;
        try {
            b = *F[i].bidegree();
        } catch (const WrongBidegree&) {
            throw DegreeMismatch("form F" + std::to_string(i) + " is not homogeneous");
        }
        if (b.y != 0 || b.x != m)
            throw DegreeMismatch("form F" + std::to_string(i) + " must be a degree " + std::to_string(m) +
                                 " form in the X variables only");
    }
    if (!R->field.is_rational() && m % R->field.characteristic() == 0)
        throw CharacteristicClash("characteristic divides m");
    inst.F = std::move(F);
    return inst;
}

ProblemInstance ProblemInstance::create(const Field& k, int n, int r, int m, const std::vector<std::string>& polys) {
    if (n < 0 || r < 0 || r + n + 2 > kMaxVars) throw InvalidInstance("unsupported (n, r)");
    RingPtr R = make_ring(k, r, n);
    std::vector<Polynomial> F;
    for (auto& s : polys) F.push_back(parse_poly(s, R));
    return from_polys(R, m, std::move(F));
}

// ----------------------------------------------------------- JacobianSystem

std::vector<Polynomial> JacobianSystem::J_generators() const {
    std::vector<Polynomial> g = Fy;
    g.insert(g.end(), Fx.begin(), Fx.end());
    return g;
}

std::vector<Polynomial> JacobianSystem::Jtilde_generators() const { return G; }

Polynomial JacobianSystem::prod_YX() const {
    Monomial mu;
    for (int v = 0; v < ring->nvars(); ++v) mu.e[v] = 1;
    return Polynomial::monomial(ring, mu, 1);
}

JacobianSystem build_system(const ProblemInstance& inst) {
    const Field& k = inst.field();
    if (!k.is_rational()) {
        auto p = k.characteristic();
        if (inst.m % p == 0) throw CharacteristicClash("characteristic divides m");
        if ((inst.m + 1) % p == 0) throw CharacteristicClash("characteristic divides m+1");
    }
    JacobianSystem s;
    s.ring = inst.ring;
    s.n = inst.n;
    s.r = inst.r;
    s.m = inst.m;
    const Ring& R = *inst.ring;
    s.F = Polynomial(inst.ring);
    for (int i = 0; i <= s.r; ++i) s.F += Polynomial::variable(inst.ring, R.y(i)) * inst.F[i];
    for (int i = 0; i <= s.r; ++i) s.Fy.push_back(derivative(s.F, R.y(i)));
    for (int j = 0; j <= s.n; ++j) s.Fx.push_back(derivative(s.F, R.x(j)));
    for (int i = 0; i <= s.r; ++i) s.G.push_back(Polynomial::variable(inst.ring, R.y(i)) * s.Fy[i]);
    for (int j = 0; j <= s.n; ++j) s.G.push_back(Polynomial::variable(inst.ring, R.x(j)) * s.Fx[j]);
    s.rho = {s.n - s.r - 1, (s.n + s.r + 1) * s.m - 2 * (s.n + 1)};
    return s;
}

QuotientPiece J_piece(const JacobianSystem& sys, Bidegree d, std::size_t max_columns) {
    auto gens = sys.J_generators();
    return QuotientPiece::build(sys.ring, gens, d, max_columns);
}

QuotientPiece Jtilde_piece(const JacobianSystem& sys, Bidegree d, std::size_t max_columns) {
    auto gens = sys.Jtilde_generators();
    return QuotientPiece::build(sys.ring, gens, d, max_columns);
}

QuotientPiece hodge_piece(const JacobianSystem& sys, int q, std::size_t max_columns) {
    if (q < sys.r || q > sys.n + sys.r - 1)
        throw InvalidInstance("Hodge index q=" + std::to_string(q) + " outside [r, n+r-1]");
    Bidegree d = sys.hodge_bidegree(q);
    if (!d.nonnegative()) throw InvalidInstance("Hodge piece has negative bidegree " + d.str());
    return J_piece(sys, d, max_columns);
}

OneDimReport verify_one_dimensionality(const JacobianSystem& sys, std::size_t max_columns) {
    OneDimReport rep;
    rep.dim_Jrho = J_piece(sys, sys.rho, max_columns).dim();
    rep.dim_Jtilde = Jtilde_piece(sys, sys.jtilde_top(), max_columns).dim();
    return rep;
}

// --------------------------------------------------------------- smoothness

namespace {

// forms in the X variables of a ring with r = 0; vars are X_0..X_N
bool ideal_contains_degree(const RingPtr& R, const std::vector<Polynomial>& gens, int dmax, int& hit) {
    for (int d = 1; d <= dmax; ++d) {
        auto piece = QuotientPiece::build(R, gens, Bidegree{0, d}, 2000000);
        if (piece.dim() == 0) {
            hit = d;
            return true;
        }
    }
    return false;
}

// V(forms) smooth of codimension forms.size() (or empty)
AssumptionReport::Status transversal(const RingPtr& R, const std::vector<Polynomial>& forms, int dmax, int& hit) {
    std::vector<Polynomial> gens;
    for (auto& f : forms) {
        if (f.is_zero()) return AssumptionReport::Status::Fail;
        gens.push_back(f);
    }
    PolyMatrix jac;
    for (auto& f : forms) {
        std::vector<Polynomial> row;
        for (int j = 0; j <= R->n; ++j) row.push_back(derivative(f, R->x(j)));
        jac.push_back(std::move(row));
    }
    if (static_cast<int>(forms.size()) <= R->n + 1)
        for (auto& mnr : maximal_minors(jac))
            if (!mnr.is_zero()) gens.push_back(mnr);
    return ideal_contains_degree(R, gens, dmax, hit) ? AssumptionReport::Status::Pass
                                                     : AssumptionReport::Status::Inconclusive;
}

bool diagonal(const Polynomial& f, const Ring& R) {
    for (auto& [mono, c] : f.terms()) {
        int nz = 0;
        for (int v = 0; v < R.nvars(); ++v) nz += mono.e[v] ? 1 : 0;
        if (nz != 1) return false;
    }
    return true;
}

}  // namespace

bool hypersurface_smooth(const Polynomial& f, int nvars_x, int m) {
    const Ring& R = f.ring();
    std::vector<Polynomial> parts;
    for (int j = 0; j < nvars_x; ++j) parts.push_back(derivative(f, R.x(j)));
    int d = nvars_x * (m - 2) + 1;
    auto piece = QuotientPiece::build(f.ring_ptr(), parts, Bidegree{0, d}, 2000000);
    return piece.dim() == 0;
}

std::string AssumptionReport::status_name() const {
    switch (status) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        default: return "inconclusive";
    }
}

AssumptionReport check_assumptions(const ProblemInstance& inst, const AssumptionOptions& opt) {
    AssumptionReport rep;
    const Field& k = inst.field();
    const int n = inst.n, r = inst.r, m = inst.m;
    if (!k.invertible(mpz_class(m + 1)) || !k.invertible(mpz_class(m))) {
        rep.status = AssumptionReport::Status::Fail;
        rep.notes.push_back("m or m+1 is not invertible in " + k.name());
        return rep;
    }

    // diagonal forms: smooth and transversal iff every square minor of the
    // coefficient matrix (rows = forms, columns = variables) is nonzero
    bool all_diag = true;
    for (auto& f : inst.F) all_diag = all_diag && diagonal(f, *inst.ring);
    if (all_diag) {
        rep.used_fermat_shortcut = true;
        std::vector<std::vector<Scalar>> c(r + 1, std::vector<Scalar>(n + 1));
        for (int i = 0; i <= r; ++i)
            for (int j = 0; j <= n; ++j) c[i][j] = inst.F[i].coefficient(Monomial::var(inst.ring->x(j), m));
        std::function<Scalar(std::vector<int>, std::vector<int>)> det = [&](std::vector<int> rows,
                                                                              std::vector<int> cols) -> Scalar {
            if (rows.size() == 1) return c[rows[0]][cols[0]];
            Scalar s = 0;
            std::vector<int> sub_rows(rows.begin() + 1, rows.end());
            for (std::size_t t = 0; t < cols.size(); ++t) {
                std::vector<int> sub_cols;
                for (std::size_t u = 0; u < cols.size(); ++u)
                    if (u != t) sub_cols.push_back(cols[u]);
                Scalar term = k.mul(c[rows[0]][cols[t]], det(sub_rows, sub_cols));
                s = (t % 2) ? k.sub(s, term) : k.add(s, term);
            }
            return s;
        };
        for (int mask = 1; mask < (1 << (r + 1)); ++mask) {
            std::vector<int> rows;
            for (int i = 0; i <= r; ++i)
                if (mask >> i & 1) rows.push_back(i);
            std::size_t s = rows.size();
            std::vector<int> cols;
            std::function<bool(int)> pick = [&](int start) -> bool {
                if (cols.size() == s) return !Field::is_zero(det(rows, cols));
                for (int j = start; j <= n; ++j) {
                    cols.push_back(j);
                    bool ok = pick(j + 1);
                    cols.pop_back();
                    if (!ok) return false;
                }
                return true;
            };
            if (!pick(0)) {
                rep.status = AssumptionReport::Status::Fail;
                rep.notes.push_back("diagonal coefficient matrix has a vanishing minor");
                return rep;
            }
        }
        rep.notes.push_back("diagonal forms: all coefficient minors nonzero");
        return rep;
    }

    const int dmax = opt.dmax > 0 ? opt.dmax : (r + 1) * (m - 1) * (n + 1);
    // check every subfamily of forms on every coordinate section X_T = 0
    const int depth = opt.skip_hereditary ? 0 : opt.hereditary_depth;
    std::vector<std::vector<int>> sections{{}};
    for (int size = 1; size <= depth && size <= n; ++size) {
        std::vector<int> cur;
        std::function<void(int)> rec = [&](int start) {
            if (static_cast<int>(cur.size()) == size) {
                sections.push_back(cur);
                return;
            }
            for (int j = start; j <= n; ++j) {
                cur.push_back(j);
                rec(j + 1);
                cur.pop_back();
            }
        };
        rec(0);
    }
    for (auto& T : sections) {
        int keep = n + 1 - static_cast<int>(T.size());
        RingPtr S = make_ring(k, 0, keep - 1);
        std::vector<int> var_map(inst.ring->nvars(), -1);
        std::map<int, Scalar> zero;
        for (int j = 0, t = 0; j <= n; ++j) {
            bool dropped = std::find(T.begin(), T.end(), j) != T.end();
            if (dropped) zero[inst.ring->x(j)] = 0;
            else var_map[inst.ring->x(j)] = S->x(t++);
        }
        std::vector<Polynomial> restricted;
        for (auto& f : inst.F) restricted.push_back(change_ring(substitute(f, zero), S, var_map));
        for (int mask = 1; mask < (1 << (r + 1)); ++mask) {
            std::vector<Polynomial> forms;
            for (int i = 0; i <= r; ++i)
                if (mask >> i & 1) forms.push_back(restricted[i]);
            std::string where = "forms mask " + std::to_string(mask) + " on section {";
            for (auto j : T) where += "X" + std::to_string(j) + " ";
            where += "= 0}";
            int hit = 0;
            auto st = transversal(S, forms, dmax, hit);
            if (st == AssumptionReport::Status::Fail) {
                rep.status = st;
                rep.notes.push_back(where + ": a form vanishes identically");
                return rep;
            }
            if (st == AssumptionReport::Status::Inconclusive) {
                rep.status = st;
                rep.notes.push_back(where + ": no certificate up to degree " + std::to_string(dmax));
                return rep;
            }
        }
    }
    rep.notes.push_back("ideal-membership certificates found");
    return rep;
}

}  // namespace qec
