#include "support.hpp"

#include <doctest.h>

using namespace qtest;

TEST_CASE("parse and format") {
    RingPtr R = make_ring(Field::rationals(), 1, 2);
    Polynomial f = parse_poly("3*Y0*X2^2 - 1/2*X0^3 + (X1 - X0)*(X1 + X0)", R);
    CHECK(format_poly(f) == "3*Y0*X2^2 - 1/2*X0^3 - X0^2 + X1^2");
    CHECK(parse_poly(format_poly(f), R) == f);
    CHECK(parse_poly("(X0+X1)^2", R) == parse_poly("X0^2 + 2*X0*X1 + X1^2", R));
    CHECK(parse_poly("0", R).is_zero());
    CHECK_THROWS_AS(parse_poly("X0 +", R), SyntaxError);
    CHECK_THROWS_AS(parse_poly("X7", R), UnknownVariable);
    CHECK_THROWS_AS(parse_poly("Y2*X0", R), UnknownVariable);
    CHECK_THROWS_AS(parse_poly("X0 + X0^2", R).bidegree(), WrongBidegree);
}

TEST_CASE("parse rejects what the field cannot hold") {
    RingPtr R = make_ring(Field::prime(5), 0, 2);
    CHECK(format_poly(parse_poly("6*X0 + 1/2*X1", R)) == "X0 - 2*X1");
    CHECK_THROWS(parse_poly("1/5*X0", R));
}

TEST_CASE("monomial counts") {
    RingPtr R = make_ring(Field::rationals(), 2, 4);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 6; ++x) {
            Bidegree d{y, x};
            CHECK(count_monomials(*R, d) == monomials_of_bidegree(*R, d).size());
            CHECK(count_monomials(*R, d) == binomial_size(y + 2, 2) * binomial_size(x + 4, 4));
        }
}

TEST_CASE("Euler identities for random bihomogeneous polynomials") {
    std::mt19937 g(kSeed);
    for (int t = 0; t < kCases; ++t) {
        int r = static_cast<int>(rand_int(g, 0, 2)), n = static_cast<int>(rand_int(g, 1, 4));
        RingPtr R = make_ring(t % 2 ? Field::rationals() : Field::prime(31), r, n);
        Bidegree d{static_cast<int>(rand_int(g, 0, 3)), static_cast<int>(rand_int(g, 0, 4))};
        Polynomial f = rand_poly(g, R, d, 6);
        Polynomial ex(R), ey(R);
        for (int j = 0; j <= n; ++j) ex += Polynomial::variable(R, R->x(j)) * derivative(f, R->x(j));
        for (int i = 0; i <= r; ++i) ey += Polynomial::variable(R, R->y(i)) * derivative(f, R->y(i));
        CHECK(ex == f.scaled(R->field.from_int(d.x)));
        CHECK(ey == f.scaled(R->field.from_int(d.y)));
    }
}

TEST_CASE("ring arithmetic identities") {
    std::mt19937 g(kSeed + 7);
    RingPtr R = make_ring(Field::rationals(), 1, 3);
    for (int t = 0; t < kCases; ++t) {
        Polynomial a = rand_poly(g, R, {1, 1}), b = rand_poly(g, R, {0, 2}), c = rand_poly(g, R, {1, 2});
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        int v = static_cast<int>(rand_int(g, 0, R->nvars() - 1));
        CHECK(derivative(a * b, v) == derivative(a, v) * b + a * derivative(b, v));
        if (!b.is_zero()) CHECK(exact_divide(a * b, b) == a);
        CHECK(a.pow(2) == a * a);
    }
}

TEST_CASE("exact division failures") {
    RingPtr R = make_ring(Field::rationals(), 0, 1);
    CHECK_THROWS_AS(exact_divide(parse_poly("X0^2 + X1^2", R), parse_poly("X0 + X1", R)), NotDivisible);
    CHECK(exact_divide(parse_poly("X0^2 - X1^2", R), parse_poly("X0 + X1", R)) == parse_poly("X0 - X1", R));
}

TEST_CASE("exponent overflow is refused") {
    Monomial a = Monomial::var(0, 200);
    CHECK_THROWS(a * a);
}
