#include "support.hpp"

#include <doctest.h>

using namespace qtest;

namespace {

GWForm rand_form(std::mt19937& g, const Field& k, int len) {
    GWForm f(k);
    for (int i = 0; i < len; ++i) {
        if (rand_int(g, 0, 4) == 0) f.add_h(1);
        else f.add_diag(rand_unit(g, k, 30));
    }
    return f;
}

ScalarMatrix transform(const Field& k, const ScalarMatrix& A, const ScalarMatrix& P) {
    std::size_t n = A.size();
    ScalarMatrix B(n, std::vector<Scalar>(n, Scalar(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Scalar s = 0;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) s = k.add(s, k.mul(P[a][i], k.mul(A[a][b], P[b][j])));
            B[i][j] = s;
        }
    return B;
}

}  // namespace

TEST_CASE("small identities") {
    Field Q = Field::rationals();
    CHECK(gw_equals(parse_gw("<2>+<-2>", Q), parse_gw("H", Q)));
    CHECK_FALSE(gw_equals(parse_gw("<1>+<1>", Q), parse_gw("H", Q)));
    CHECK(gw_equals(parse_gw("<2>+<2>", Q), parse_gw("<1>+<1>", Q)));
    CHECK_FALSE(gw_equals(parse_gw("<3>+<3>", Q), parse_gw("<1>+<1>", Q)));
    CHECK(gw_equals(parse_gw("<1>+<1>+<-2>+<-2>", Q), parse_gw("2*H", Q)));
    CHECK(parse_gw("<1>+<1>+<-2>+<-2>", Q).simplified().str() == "2*H");
    CHECK(parse_gw("3*H + <2> - <5>", Q).str() == "3*H + <2> - <5>");
    CHECK(gw_equals(parse_gw("<8>", Q), parse_gw("<2>", Q)));
    CHECK(gw_equals(parse_gw("<1/3>", Q), parse_gw("<3>", Q)));
    Field F5 = Field::prime(5), F7 = Field::prime(7);
    CHECK(gw_equals(parse_gw("<1>+<1>", F5), parse_gw("H", F5)));
    CHECK_FALSE(gw_equals(parse_gw("<1>+<1>", F7), parse_gw("H", F7)));
    CHECK(gw_equals(parse_gw("<3>+<3>", F7), parse_gw("<1>+<1>", F7)));
    CHECK_THROWS_AS(parse_gw("<1> +", Q), FormSyntaxError);
    CHECK_THROWS_AS(parse_gw("<0>", Q), QecError);
}

TEST_CASE("invariants") {
    Field Q = Field::rationals();
    GWForm f = parse_gw("<1>+<3>+<-6>", Q);
    CHECK(f.rank() == 3);
    CHECK(signature(f) == 1);
    CHECK(discriminant(f).rep == -2);
    CHECK(hasse_invariant(f, Place::at(3)) == -1);
    CHECK(discriminant(GWForm::hyperbolic(Q, 1)).rep == -1);
    CHECK(signature(GWForm::hyperbolic(Q, 5)) == 0);
    CHECK(chi_projective_space(Q, 2).rank() == 3);
    GWForm x = parse_gw("<2>+<3>+<7>", Q);
    CHECK(gw_equals(GWForm::hyperbolic(Q) * x, GWForm::hyperbolic(Q, 3)));
}

TEST_CASE("Witt relations") {
    std::mt19937 g(kSeed);
    for (const Field& k : {Field::rationals(), Field::prime(13), Field::prime(1019)})
        for (int t = 0; t < kCases; ++t) {
            Scalar a = rand_unit(g, k, 40), b = rand_unit(g, k, 40), c = rand_unit(g, k, 40);
            CHECK(gw_equals(GWForm::diagonal(k, {a, k.neg(a)}), GWForm::hyperbolic(k)));
            CHECK(gw_equals(GWForm::diagonal(k, {k.mul(a, k.mul(c, c))}), GWForm::diagonal(k, {a})));
            Scalar s = k.add(a, b);
            if (!Field::is_zero(s))
                CHECK(gw_equals(GWForm::diagonal(k, {a, b}), GWForm::diagonal(k, {s, k.mul(k.mul(a, b), s)})));
            CHECK(gw_equals(GWForm::diagonal(k, {a}) * GWForm::diagonal(k, {b}), GWForm::diagonal(k, {k.mul(a, b)})));
        }
}

TEST_CASE("simplification keeps the class") {
    std::mt19937 g(kSeed + 1);
    for (const Field& k : {Field::rationals(), Field::prime(11)})
        for (int t = 0; t < kCases; ++t) {
            GWForm f = rand_form(g, k, static_cast<int>(rand_int(g, 1, 7)));
            GWForm s = f.simplified();
            CHECK(s.rank() == f.rank());
            CHECK(gw_equals(s, f));
            GWForm h = rand_form(g, k, 3);
            CHECK(gw_equals((f + h) - h, f));
        }
}

TEST_CASE("congruence invariance of the diagonalization") {
    std::mt19937 g(kSeed + 2);
    for (const Field& k : {Field::rationals(), Field::prime(101)}) {
        int done = 0;
        while (done < kCases) {
            int n = static_cast<int>(rand_int(g, 1, 5));
            ScalarMatrix A = rand_symmetric(g, k, n);
            if (Field::is_zero(dense_det(k, A))) continue;
            ScalarMatrix P(n, std::vector<Scalar>(n));
            for (auto& row : P)
                for (auto& x : row) x = k.from_int(rand_int(g, -3, 3));
            if (Field::is_zero(dense_det(k, P))) continue;
            GWForm f = from_gram(k, A), h = from_gram(k, transform(k, A, P));
            CHECK(gw_equals(f, h));
            CHECK(f.rank() == n);
            auto d = diagonalize(k, A);
            Scalar prod = k.from_int(1);
            for (auto& x : d) prod = k.mul(prod, x);
            CHECK(square_class(k, prod) == square_class(k, dense_det(k, A)));
            ++done;
        }
    }
    Field Q = Field::rationals();
    CHECK_THROWS_AS(from_gram(Q, {{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}}), DegenerateForm);
    CHECK(gw_equals(from_gram(Q, {{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}}), GWForm::hyperbolic(Q)));
}

TEST_CASE("root extension trace form: closed form against the direct Gram") {
    std::mt19937 g(kSeed + 3);
    for (const Field& k : {Field::rationals(), Field::prime(13)})
        for (int t = 0; t < kCases; ++t) {
            int m = static_cast<int>(rand_int(g, 1, 6));
            if (!k.invertible(mpz_class(m))) continue;
            Scalar a = rand_unit(g, k, 20), u = rand_unit(g, k, 20);
            // Tr(x^t) on k[x]/(x^m + a): m (-a)^(t/m) when m | t
            ScalarMatrix G(m, std::vector<Scalar>(m, Scalar(0)));
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    if ((i + j) % m == 0) G[i][j] = k.mul(u, k.mul(k.from_int(m), k.pow(k.neg(a), (i + j) / m)));
            GWForm direct = from_gram(k, G);
            CHECK(gw_equals(trace_form_root_extension_closed(k, a, u, m), direct));
            CHECK(gw_equals(trace_form_root_extension(k, a, {u}, m), direct));
        }
    Field Q = Field::rationals();
    // x^2 - 1 splits: u = 1 + x is a zero divisor
    CHECK_THROWS_AS(trace_form_root_extension(Q, Scalar(-1), {Scalar(1), Scalar(1)}, 2), NotAUnit);
    CHECK_THROWS_AS(trace_form_root_extension_closed(Field::prime(3), Scalar(1), Scalar(1), 3), Inseparable);
}
