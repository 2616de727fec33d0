#pragma once

#include "qec/pipeline.hpp"

#include <random>
#include <set>

namespace qtest {

using namespace qec;

inline constexpr unsigned kSeed = 20231016u;
inline constexpr int kCases = 200;

inline long rand_int(std::mt19937& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

inline long rand_nonzero(std::mt19937& g, long lo, long hi) {
    for (;;) {
        long v = rand_int(g, lo, hi);
        if (v) return v;
    }
}

inline Scalar rand_scalar(std::mt19937& g, const Field& k, long bound = 9) {
    return k.from_rational(mpq_class(rand_int(g, -bound, bound), rand_int(g, 1, 4)));
}

inline Scalar rand_unit(std::mt19937& g, const Field& k, long bound = 9) {
    for (;;) {
        Scalar s = rand_scalar(g, k, bound);
        if (!Field::is_zero(s)) return s;
    }
}

// random bihomogeneous polynomial with a few terms
inline Polynomial rand_poly(std::mt19937& g, const RingPtr& R, Bidegree d, int terms = 4) {
    auto mons = monomials_of_bidegree(*R, d);
    for (;;) {
        Polynomial f(R);
        for (int t = 0; t < terms; ++t)
            f.add_term(mons[rand_int(g, 0, static_cast<long>(mons.size()) - 1)], rand_scalar(g, R->field));
        if (!f.is_zero()) return f;
    }
}

// plain Laplace expansion along the first row
inline Polynomial cofactor_det(const PolyMatrix& M) {
    std::size_t n = M.size();
    if (n == 1) return M[0][0];
    RingPtr R = M[0][0].ring_ptr();
    Polynomial d(R);
    for (std::size_t j = 0; j < n; ++j) {
        PolyMatrix sub;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Polynomial> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(M[i][c]);
            sub.push_back(row);
        }
        Polynomial t = M[0][j] * cofactor_det(sub);
        if (j % 2) d -= t;
        else d += t;
    }
    return d;
}

// rank of a dense matrix over the field by textbook elimination
inline std::size_t dense_rank(const Field& k, std::vector<std::vector<Scalar>> A) {
    std::size_t rank = 0, rows = A.size();
    if (!rows) return 0;
    std::size_t cols = A[0].size();
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && Field::is_zero(A[p][c])) ++p;
        if (p == rows) continue;
        std::swap(A[p], A[rank]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || Field::is_zero(A[i][c])) continue;
            Scalar f = k.div(A[i][c], A[rank][c]);
            for (std::size_t j = c; j < cols; ++j) A[i][j] = k.sub(A[i][j], k.mul(f, A[rank][j]));
        }
        ++rank;
    }
    return rank;
}

// dimension of (R / (gens))_d from the dense span of all g * mu
inline std::size_t dense_quotient_dim(const RingPtr& R, const std::vector<Polynomial>& gens, Bidegree d) {
    auto cols = monomials_of_bidegree(*R, d);
    std::vector<std::vector<Scalar>> rows;
    for (auto& g : gens) {
        Bidegree e = d - *g.bidegree();
        if (!e.nonnegative()) continue;
        for (auto& mu : monomials_of_bidegree(*R, e)) {
            Polynomial p = g.times_monomial(mu, 1);
            std::vector<Scalar> row(cols.size(), Scalar(0));
            for (std::size_t c = 0; c < cols.size(); ++c) row[c] = p.coefficient(cols[c]);
            rows.push_back(row);
        }
    }
    return cols.size() - dense_rank(R->field, rows);
}

inline ScalarMatrix rand_symmetric(std::mt19937& g, const Field& k, int n, long bound = 6) {
    ScalarMatrix A(n, std::vector<Scalar>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) A[i][j] = A[j][i] = k.from_int(rand_int(g, -bound, bound));
    return A;
}

inline Scalar dense_det(const Field& k, ScalarMatrix A) {
    std::size_t n = A.size();
    Scalar d = k.from_int(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && Field::is_zero(A[p][c])) ++p;
        if (p == n) return Scalar(0);
        if (p != c) {
            std::swap(A[p], A[c]);
            d = k.neg(d);
        }
        d = k.mul(d, A[c][c]);
        for (std::size_t i = c + 1; i < n; ++i) {
            Scalar f = k.div(A[i][c], A[c][c]);
            for (std::size_t j = c; j < n; ++j) A[i][j] = k.sub(A[i][j], k.mul(f, A[c][j]));
        }
    }
    return d;
}

inline FermatInstance rand_fermat(std::mt19937& g, const Field& k, int n, int m) {
    for (;;) {
        FermatInstance f{k, n, m, {}, {}};
        for (int i = 0; i <= n; ++i) {
            f.a.push_back(k.from_int(rand_nonzero(g, -7, 7)));
            f.b.push_back(k.from_int(rand_nonzero(g, -7, 7)));
        }
        try {
            f.validate();
            return f;
        } catch (const InvalidInstance&) {
        }
    }
}

}  // namespace qtest
