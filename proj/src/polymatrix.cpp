#include "qec/polymatrix.hpp"

#include <bit>
#include <stdexcept>

namespace qec {

namespace {

RingPtr ring_of(const PolyMatrix& M) {
    for (auto& row : M)
        for (auto& p : row)
            if (p.ring_ptr()) return p.ring_ptr();
    throw std::invalid_argument("matrix without a ring");
}

// D[S] = det of rows[0..|S|) against column set S. Rows are added one at a
// time; the sign of column c inside S is the parity of members of S below c.
std::vector<Polynomial> subset_expansion(const PolyMatrix& M, const std::vector<int>& rows, int ncols) {
    RingPtr R = ring_of(M);
    const std::size_t full = std::size_t{1} << ncols;
    std::vector<Polynomial> D(full, Polynomial(R));
    std::vector<char> live(full, 0);
    D[0] = Polynomial::constant(R, 1);
    live[0] = 1;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& row = M[rows[k]];
        std::vector<Polynomial> N(full, Polynomial(R));
        std::vector<char> nlive(full, 0);
        for (std::size_t S = 0; S < full; ++S) {
            if (!live[S] || static_cast<std::size_t>(std::popcount(S)) != k) continue;
            for (int c = 0; c < ncols; ++c) {
                if (S >> c & 1) continue;
                if (row[c].is_zero()) continue;
                int below = std::popcount(S & ((std::size_t{1} << c) - 1));
                // new column c sits at position `below` among S+{c}; the new
                // row is last, so the sign is (-1)^(k - below)
                Polynomial t = D[S] * row[c];
                std::size_t T = S | (std::size_t{1} << c);
                if ((k - below) % 2) N[T] -= t;
                else N[T] += t;
                nlive[T] = 1;
            }
        }
        D.swap(N);
        live.swap(nlive);
    }
    return D;
}

}  // namespace

Polynomial det_minor_expansion(const PolyMatrix& M) {
    int N = static_cast<int>(M.size());
    if (N == 0) throw std::invalid_argument("empty matrix");
    std::vector<int> rows(N);
    for (int i = 0; i < N; ++i) rows[i] = i;
    auto D = subset_expansion(M, rows, N);
    return D[(std::size_t{1} << N) - 1];
}

Polynomial det_bareiss(PolyMatrix M) {
    int N = static_cast<int>(M.size());
    RingPtr R = ring_of(M);
    Polynomial prev = Polynomial::constant(R, 1);
    bool negate = false;
    for (int k = 0; k < N - 1; ++k) {
        if (M[k][k].is_zero()) {
            int s = -1;
            for (int i = k + 1; i < N; ++i)
                if (!M[i][k].is_zero()) {
                    s = i;
                    break;
                }
            if (s < 0) return Polynomial(R);
            std::swap(M[k], M[s]);
            negate = !negate;
        }
        for (int i = k + 1; i < N; ++i)
            for (int j = k + 1; j < N; ++j) {
                Polynomial num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
                M[i][j] = exact_divide(num, prev);
            }
        prev = M[k][k];
    }
    Polynomial d = M[N - 1][N - 1];
    return negate ? -d : d;
}

Polynomial minor_det(const PolyMatrix& M, int drop_row, int drop_col) {
    PolyMatrix S;
    for (int i = 0; i < static_cast<int>(M.size()); ++i) {
        if (i == drop_row) continue;
        std::vector<Polynomial> row;
        for (int j = 0; j < static_cast<int>(M[i].size()); ++j)
            if (j != drop_col) row.push_back(M[i][j]);
        S.push_back(std::move(row));
    }
    return det_minor_expansion(S);
}

std::vector<Polynomial> row_minors(const PolyMatrix& M, int drop_row) {
    int N = static_cast<int>(M.size());
    std::vector<int> rows;
    for (int i = 0; i < N; ++i)
        if (i != drop_row) rows.push_back(i);
    auto D = subset_expansion(M, rows, N);
    std::vector<Polynomial> out;
    std::size_t full = (std::size_t{1} << N) - 1;
    for (int k = 0; k < N; ++k) out.push_back(D[full & ~(std::size_t{1} << k)]);
    return out;
}

std::vector<Polynomial> maximal_minors(const PolyMatrix& M) {
    int s = static_cast<int>(M.size());
    int ncols = static_cast<int>(M[0].size());
    std::vector<int> rows(s);
    for (int i = 0; i < s; ++i) rows[i] = i;
    auto D = subset_expansion(M, rows, ncols);
    std::vector<Polynomial> out;
    for (std::size_t S = 0; S < D.size(); ++S)
        if (std::popcount(S) == s) out.push_back(D[S]);
    return out;
}

}  // namespace qec
