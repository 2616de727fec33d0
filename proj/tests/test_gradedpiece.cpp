#include "support.hpp"

#include <doctest.h>

using namespace qtest;

TEST_CASE("quotient of k[X0,X1,X2] by two quadrics") {
    RingPtr R = make_ring(Field::rationals(), 0, 2);
    std::vector<Polynomial> gens{parse_poly("X0^2 + X1^2 + X2^2", R), parse_poly("X0^2 + 2*X1^2 + 3*X2^2", R)};
    // Hilbert series (1+t)^2/(1-t): 1, 3, 4, 4, ...
    int expect[] = {1, 3, 4, 4, 4};
    for (int d = 0; d < 5; ++d) CHECK(QuotientPiece::build(R, gens, {0, d}).dim() == static_cast<std::size_t>(expect[d]));
}

TEST_CASE("graded piece dimension against dense elimination") {
    std::mt19937 g(kSeed);
    for (int t = 0; t < kCases; ++t) {
        int r = static_cast<int>(rand_int(g, 0, 1)), n = static_cast<int>(rand_int(g, 1, 3));
        RingPtr R = make_ring(t % 3 ? Field::rationals() : Field::prime(7), r, n);
        std::vector<Polynomial> gens;
        int ng = static_cast<int>(rand_int(g, 1, 4));
        for (int i = 0; i < ng; ++i)
            gens.push_back(rand_poly(g, R, {static_cast<int>(rand_int(g, 0, 1)), static_cast<int>(rand_int(g, 1, 2))}, 3));
        Bidegree d{static_cast<int>(rand_int(g, 0, 2)), static_cast<int>(rand_int(g, 1, 3))};
        QuotientPiece P = QuotientPiece::build(R, gens, d);
        CHECK(P.dim() == dense_quotient_dim(R, gens, d));
        CHECK(P.dim() + P.rank() == P.ambient_dim());
    }
}

TEST_CASE("normal forms are linear and kill the ideal") {
    std::mt19937 g(kSeed + 3);
    for (int t = 0; t < kCases; ++t) {
        RingPtr R = make_ring(t % 2 ? Field::rationals() : Field::prime(101), 1, 2);
        std::vector<Polynomial> gens{rand_poly(g, R, {0, 2}, 4), rand_poly(g, R, {1, 1}, 4), rand_poly(g, R, {1, 2}, 3)};
        Bidegree d{1, 3};
        QuotientPiece P = QuotientPiece::build(R, gens, d);
        const Field& k = R->field;
        Polynomial a = rand_poly(g, R, d, 5), b = rand_poly(g, R, d, 5);
        Scalar c = rand_scalar(g, k);
        auto na = P.normal_form(a), nb = P.normal_form(b), ns = P.normal_form(a + b.scaled(c));
        for (std::size_t i = 0; i < P.dim(); ++i) CHECK(ns[i] == k.add(na[i], k.mul(c, nb[i])));
        CHECK(P.is_zero_class(a - P.reduce(a)));
        Polynomial in_ideal = gens[0] * rand_poly(g, R, {1, 1}, 2) + gens[2] * rand_poly(g, R, {0, 1}, 2);
        CHECK(P.is_zero_class(in_ideal));
        for (std::size_t i = 0; i < P.dim(); ++i) {
            auto e = P.normal_form(P.basis_element(i));
            for (std::size_t j = 0; j < P.dim(); ++j) CHECK(e[j] == (i == j ? 1 : 0));
        }
    }
}

TEST_CASE("size guardrail") {
    RingPtr R = make_ring(Field::rationals(), 1, 5);
    std::vector<Polynomial> gens{parse_poly("X0^2", R)};
    CHECK_THROWS_AS(QuotientPiece::build(R, gens, {3, 9}, 1000), SizeLimitExceeded);
}
