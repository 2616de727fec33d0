#include "qec/field.hpp"

#include <algorithm>
#include <map>

namespace qec {

namespace {

constexpr std::int64_t kMaxPrime = (1ll << 31) - 1;

bool probable_prime(const mpz_class& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
mpz_class rho_factor(const mpz_class& n, unsigned long budget) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1; c < 40; ++c) {
        mpz_class y = 2, x, q = 1, g = 1, ys;
        unsigned long r = 1, spent = 0;
        const unsigned long m = 128;
        auto f = [&](mpz_class& v) {
            v = v * v + c;
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) f(y);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                unsigned long lim = std::min(m, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    f(y);
                    mpz_class d = x - y;
                    q = q * abs(d);
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                g = gcd(q, n);
                k += lim;
                spent += lim;
            }
            r *= 2;
            if (spent > budget) return 0;
        }
        if (g == n) {
            do {
                f(ys);
                g = gcd(abs(mpz_class(x - ys)), n);
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
    }
    return 0;
}

void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out, const FactorLimits& lim) {
    if (n == 1) return;
    if (probable_prime(n)) {
        out[n]++;
        return;
    }
    mpz_class d = rho_factor(n, lim.rho_iterations);
    if (d == 0) throw FactorizationLimit("could not factor " + n.get_str());
    factor_into(d, out, lim);
    factor_into(n / d, out, lim);
}

}  // namespace

// ---------------------------------------------------------------- Field

Field Field::rationals() { return Field(Kind::Rationals, 0); }

Field Field::prime(std::int64_t p) {
    if (p < 3 || p > kMaxPrime || p % 2 == 0 || !probable_prime(mpz_class(static_cast<long>(p))))
        throw InvalidField("characteristic must be an odd prime below 2^31, got " +
                           std::to_string(p));
    return Field(Kind::Prime, p);
}

std::string Field::name() const {
    return is_rational() ? "Q" : "F_" + std::to_string(p_);
}

mpz_class Field::reduce(const mpz_class& v) const {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), pz_.get_mpz_t());
    return r;
}

bool Field::invertible(const mpz_class& v) const {
    if (is_rational()) return v != 0;
    return reduce(v) != 0;
}

Scalar Field::from_rational(const mpq_class& q) const {
    if (is_rational()) {
        Scalar c = q;
        c.canonicalize();
        return c;
    }
    if (q.get_den() == 0) throw NotRepresentable("zero denominator");
    mpz_class den = reduce(q.get_den());
    if (den == 0)
        throw NotRepresentable(q.get_str() + " has denominator divisible by " + std::to_string(p_));
    mpz_class di;
    mpz_invert(di.get_mpz_t(), den.get_mpz_t(), pz_.get_mpz_t());
    return Scalar(reduce(q.get_num() * di));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
    if (is_rational()) return a + b;
    return Scalar(reduce(a.get_num() + b.get_num()));
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
    if (is_rational()) return a - b;
    return Scalar(reduce(a.get_num() - b.get_num()));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
    if (is_rational()) return a * b;
    return Scalar(reduce(a.get_num() * b.get_num()));
}

Scalar Field::neg(const Scalar& a) const {
    if (is_rational()) return -a;
    return Scalar(reduce(-a.get_num()));
}

Scalar Field::inv(const Scalar& a) const {
    if (is_zero(a)) throw ZeroElement("inverse of zero");
    if (is_rational()) return 1 / a;
    mpz_class r;
    mpz_invert(r.get_mpz_t(), a.get_num_mpz_t(), pz_.get_mpz_t());
    return Scalar(r);
}

Scalar Field::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

Scalar Field::pow(const Scalar& a, long e) const {
    if (e < 0) return pow(inv(a), -e);
    Scalar r = from_int(1), base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

std::string Field::format(const Scalar& a) const {
    if (is_rational()) return a.get_str();
    // symmetric residue reads better in output
    mpz_class v = a.get_num();
    if (v > pz_ / 2) v -= pz_;
    return v.get_str();
}

// ---------------------------------------------------------- factorization

std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& n0,
                                                      const FactorLimits& lim) {
    if (n0 == 0) throw ZeroElement("factorize(0)");
    mpz_class n = abs(n0);
    std::map<mpz_class, unsigned> out;
    for (unsigned long p = 2; p <= lim.trial_bound; p += (p == 2 ? 1 : 2)) {
        if (n == 1) break;
        if (mpz_class(p) * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out[mpz_class(p)]++;
            n /= p;
        }
    }
    if (n != 1) factor_into(n, out, lim);
    return {out.begin(), out.end()};
}

mpz_class squarefree_part(const mpz_class& n, const FactorLimits& lim) {
    if (n == 0) throw ZeroElement("squarefree part of zero");
    mpz_class s = sgn(n);
    for (auto& [p, e] : factorize(n, lim))
        if (e % 2) s *= p;
    return s;
}

int legendre(const mpz_class& a, const mpz_class& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

// ---------------------------------------------------------- square classes

Scalar least_nonresidue(const Field& k) {
    if (k.is_rational()) throw InvalidField("no least nonresidue over Q");
    mpz_class p(static_cast<long>(k.characteristic()));
    for (long a = 2;; ++a)
        if (legendre(mpz_class(a), p) == -1) return Scalar(a);
}

SquareClass square_class(const Field& k, const Scalar& a, const FactorLimits& lim) {
    if (Field::is_zero(a)) throw ZeroElement("square class of zero");
    if (k.is_rational()) {
        mpz_class sn = squarefree_part(a.get_num(), lim);
        mpz_class sd = squarefree_part(a.get_den(), lim);
        mpz_class g = gcd(sn, sd);
        return SquareClass{Scalar(sn * sd / (g * g))};
    }
    mpz_class p(static_cast<long>(k.characteristic()));
    if (legendre(a.get_num(), p) == 1) return SquareClass{Scalar(1)};
    return SquareClass{least_nonresidue(k)};
}

bool is_square(const Field& k, const Scalar& a, const FactorLimits& lim) {
    if (Field::is_zero(a)) return true;
    return square_class(k, a, lim).rep == 1;
}

std::vector<mpz_class> prime_support(const mpq_class& q, const FactorLimits& lim) {
    std::vector<mpz_class> out;
    for (const mpz_class* part : {&q.get_num(), &q.get_den()})
        if (abs(*part) > 1)
            for (auto& [p, e] : factorize(*part, lim)) out.push_back(p);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------- Hilbert symbol

namespace {

int eps(const mpz_class& u) {  // (u-1)/2 mod 2, u odd
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), u.get_mpz_t(), 4);
    return r == 3 ? 1 : 0;
}

int omega(const mpz_class& u) {  // (u^2-1)/8 mod 2
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), u.get_mpz_t(), 8);
    return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& v, const FactorLimits& lim) {
    if (sgn(a) == 0 || sgn(b) == 0) throw ZeroElement("Hilbert symbol of zero");
    if (v.is_infinite()) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
    Field q = Field::rationals();
    mpz_class x = square_class(q, a, lim).rep.get_num();
    mpz_class y = square_class(q, b, lim).rep.get_num();
    const mpz_class& p = v.prime;
    int alpha = mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t()) ? 1 : 0;
    int beta = mpz_divisible_p(y.get_mpz_t(), p.get_mpz_t()) ? 1 : 0;
    mpz_class u = alpha ? mpz_class(x / p) : x;
    mpz_class w = beta ? mpz_class(y / p) : y;
    if (p == 2) {
        int e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
        return (e % 2) ? -1 : 1;
    }
    int s = 1;
    if (alpha && beta && eps(p)) s = -s;
    if (beta) s *= legendre(u, p);
    if (alpha) s *= legendre(w, p);
    return s;
}

}  // namespace qec
