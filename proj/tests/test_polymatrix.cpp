#include "support.hpp"

#include <doctest.h>

using namespace qtest;

namespace {

PolyMatrix rand_matrix(std::mt19937& g, const RingPtr& R, int n) {
    PolyMatrix M(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int kind = static_cast<int>(rand_int(g, 0, 3));
            if (kind == 0) M[i].push_back(Polynomial(R));
            else if (kind == 1) M[i].push_back(Polynomial::constant(R, rand_unit(g, R->field)));
            else M[i].push_back(rand_poly(g, R, {static_cast<int>(rand_int(g, 0, 1)), static_cast<int>(rand_int(g, 0, 1))}, 2));
        }
    return M;
}

}  // namespace

TEST_CASE("Bareiss and subset expansion against cofactor expansion") {
    std::mt19937 g(kSeed);
    for (int t = 0; t < kCases; ++t) {
        RingPtr R = make_ring(t % 2 ? Field::rationals() : Field::prime(97), 1, 1);
        int n = static_cast<int>(rand_int(g, 1, 4));
        PolyMatrix M = rand_matrix(g, R, n);
        Polynomial ref = cofactor_det(M);
        CHECK(det_bareiss(M) == ref);
        CHECK(det_minor_expansion(M) == ref);
    }
}

TEST_CASE("row minors agree with single minors") {
    std::mt19937 g(kSeed + 1);
    for (int t = 0; t < 50; ++t) {
        RingPtr R = make_ring(Field::rationals(), 0, 2);
        int n = static_cast<int>(rand_int(g, 2, 5));
        PolyMatrix M = rand_matrix(g, R, n);
        int row = static_cast<int>(rand_int(g, 0, n - 1));
        auto all = row_minors(M, row);
        REQUIRE(all.size() == static_cast<std::size_t>(n));
        for (int c = 0; c < n; ++c) {
            CHECK(all[c] == minor_det(M, row, c));
            PolyMatrix sub;
            for (int i = 0; i < n; ++i) {
                if (i == row) continue;
                std::vector<Polynomial> r;
                for (int j = 0; j < n; ++j)
                    if (j != c) r.push_back(M[i][j]);
                sub.push_back(r);
            }
            CHECK(all[c] == cofactor_det(sub));
        }
    }
}

TEST_CASE("maximal minors of a 2 x 3 matrix") {
    RingPtr R = make_ring(Field::rationals(), 0, 2);
    auto x = [&](int j) { return Polynomial::variable(R, R->x(j)); };
    PolyMatrix M{{x(0), x(1), x(2)}, {Polynomial::constant(R, 1), Polynomial::constant(R, 2), Polynomial::constant(R, 3)}};
    auto mm = maximal_minors(M);
    REQUIRE(mm.size() == 3u);
    CHECK(mm[0] == parse_poly("2*X0 - X1", R));
    CHECK(mm[1] == parse_poly("3*X0 - X2", R));
    CHECK(mm[2] == parse_poly("3*X1 - 2*X2", R));
}
