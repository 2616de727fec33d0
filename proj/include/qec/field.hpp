#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qec {

// Field elements are always stored as mpq_class. Over F_p the value is the
// canonical residue in [0, p) with denominator 1.
using Scalar = mpq_class;

struct QecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidField : QecError { using QecError::QecError; };
struct ZeroElement : QecError { using QecError::QecError; };
struct NotRepresentable : QecError { using QecError::QecError; };
struct FactorizationLimit : QecError { using QecError::QecError; };

class Field {
public:
    enum class Kind { Rationals, Prime };

    static Field rationals();
    static Field prime(std::int64_t p);  // p an odd prime below 2^31

    Kind kind() const { return kind_; }
    bool is_rational() const { return kind_ == Kind::Rationals; }
    std::int64_t characteristic() const { return p_; }
    std::string name() const;

    Scalar from_rational(const mpq_class& q) const;
    Scalar from_int(long v) const { return from_rational(mpq_class(v)); }

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar div(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inv(const Scalar& a) const;
    Scalar pow(const Scalar& a, long e) const;
    static bool is_zero(const Scalar& a) { return sgn(a) == 0; }

    // true when the integer v is invertible in the field
    bool invertible(const mpz_class& v) const;

    std::string format(const Scalar& a) const;

    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    Field(Kind k, std::int64_t p) : kind_(k), p_(p), pz_(p) {}
    mpz_class reduce(const mpz_class& v) const;

    Kind kind_;
    std::int64_t p_;
    mpz_class pz_;
};

// ---- factorization ----

struct FactorLimits {
    unsigned long trial_bound = 1ul << 16;
    unsigned long rho_iterations = 1ul << 22;
};

// prime factorization of |n|, n != 0; primes ascending
std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& n,
                                                      const FactorLimits& lim = {});

// signed squarefree integer s with n = s * k^2
mpz_class squarefree_part(const mpz_class& n, const FactorLimits& lim = {});

// ---- square classes ----

// Representative of a class in k^x / (k^x)^2. Over Q a signed squarefree
// integer, over F_p either 1 or the least quadratic nonresidue.
struct SquareClass {
    Scalar rep;
    bool operator==(const SquareClass& o) const { return rep == o.rep; }
    bool operator<(const SquareClass& o) const { return rep < o.rep; }
};

SquareClass square_class(const Field& k, const Scalar& a, const FactorLimits& lim = {});
bool is_square(const Field& k, const Scalar& a, const FactorLimits& lim = {});
Scalar least_nonresidue(const Field& k);

// A place of Q: the real place or a finite prime.
struct Place {
    mpz_class prime;  // 0 encodes the real place
    static Place infinity() { return Place{0}; }
    static Place at(const mpz_class& p) { return Place{p}; }
    bool is_infinite() const { return prime == 0; }
    bool operator==(const Place& o) const { return prime == o.prime; }
    bool operator<(const Place& o) const { return prime < o.prime; }
};

// Hilbert symbol (a,b)_v for nonzero rationals, returns +1 or -1.
int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& v,
                   const FactorLimits& lim = {});

// primes dividing the numerator or denominator of q
std::vector<mpz_class> prime_support(const mpq_class& q, const FactorLimits& lim = {});

int legendre(const mpz_class& a, const mpz_class& p);

}  // namespace qec
