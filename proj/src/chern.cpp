#include "qec/chern.hpp"

#include <gmpxx.h>

namespace qec {

namespace {

long to_long(const mpz_class& v) {
    if (!v.fits_slong_p()) throw QecError("Chern number does not fit in 64 bits");
    return v.get_si();
}

}  // namespace

long chern_degree_ci(int n, const std::vector<int>& degrees) {
    int dim = n - static_cast<int>(degrees.size());
    if (dim < 0) throw NegativeDimension("complete intersection has negative dimension");
    // truncated series (1+h)^(n+1) / prod (1 + d h)
    std::vector<mpz_class> s(dim + 1, 0);
    for (int k = 0; k <= dim; ++k) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n + 1), static_cast<unsigned long>(k));
        s[k] = b;
    }
    for (int d : degrees)
        for (int k = 1; k <= dim; ++k) s[k] -= d * s[k - 1];
    mpz_class prod = 1;
    for (int d : degrees) prod *= d;
    return to_long(s[dim] * prod);
}

long chern_degree_biproj(int n, int r, int m) {
    if (n < 0 || r < 0) throw NegativeDimension("negative projective space");
    // coefficients c[a][b] of h1^a h2^b, truncated at a <= r, b <= n
    using Table = std::vector<std::vector<mpz_class>>;
    auto zero = [&] { return Table(r + 1, std::vector<mpz_class>(n + 1, 0)); };
    auto mul = [&](const Table& x, const Table& y) {
        Table z = zero();
        for (int a = 0; a <= r; ++a)
            for (int b = 0; b <= n; ++b) {
                if (x[a][b] == 0) continue;
                for (int c = 0; a + c <= r; ++c)
                    for (int d = 0; b + d <= n; ++d)
                        if (y[c][d] != 0) z[a + c][b + d] += x[a][b] * y[c][d];
            }
        return z;
    };
    Table total = zero();
    for (int a = 0; a <= r; ++a)
        for (int b = 0; b <= n; ++b) {
            mpz_class u, v;
            mpz_bin_uiui(u.get_mpz_t(), static_cast<unsigned long>(r + 1), static_cast<unsigned long>(a));
            mpz_bin_uiui(v.get_mpz_t(), static_cast<unsigned long>(n + 1), static_cast<unsigned long>(b));
            total[a][b] = u * v;
        }
    // divide by 1 + x, x = h1 + m h2 nilpotent
    Table x = zero();
    if (r >= 1) x[1][0] = 1;
    if (n >= 1) x[0][1] = m;
    Table inv = zero(), pw = zero();
    pw[0][0] = 1;
    for (int k = 0; k <= n + r; ++k) {
        for (int a = 0; a <= r; ++a)
            for (int b = 0; b <= n; ++b) inv[a][b] += (k % 2 ? -1 : 1) * pw[a][b];
        pw = mul(pw, x);
    }
    Table c = mul(total, inv);
    // keep the degree n+r-1 part and cap with the divisor class
    Table top = zero();
    for (int a = 0; a <= r; ++a)
        for (int b = 0; b <= n; ++b)
            if (a + b == n + r - 1) top[a][b] = c[a][b];
    return to_long(mul(top, x)[r][n]);
}

GWForm chi_projective_space(const Field& k, int n) {
    if (n < -1) throw NegativeDimension("P^n with n < -1");
    GWForm f(k);
    if (n == -1) return f;
    if (n % 2 == 0) {
        f.add_h(n / 2);
        f.add_diag(k.from_int(1));
    } else {
        f.add_h((n + 1) / 2);
    }
    return f;
}

}  // namespace qec
