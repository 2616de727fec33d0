#pragma once

#include "qec/field.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qec {

inline constexpr int kMaxVars = 16;

struct ContextMismatch : QecError { using QecError::QecError; };
struct NotDivisible : QecError { using QecError::QecError; };
struct SyntaxError : QecError {
    std::size_t position;
    SyntaxError(const std::string& what, std::size_t pos)
        : QecError(what + " at position " + std::to_string(pos)), position(pos) {}
};
struct UnknownVariable : QecError { using QecError::QecError; };
struct WrongBidegree : QecError { using QecError::QecError; };

struct Bidegree {
    int y = 0;
    int x = 0;
    Bidegree operator+(const Bidegree& o) const { return {y + o.y, x + o.x}; }
    Bidegree operator-(const Bidegree& o) const { return {y - o.y, x - o.x}; }
    bool nonnegative() const { return y >= 0 && x >= 0; }
    auto operator<=>(const Bidegree&) const = default;
    std::string str() const { return "(" + std::to_string(y) + "," + std::to_string(x) + ")"; }
};

// Polynomial ring k[Y_0..Y_r, X_0..X_n]. Variable index i < r+1 is Y_i,
// index r+1+j is X_j.
struct Ring {
    Field field;
    int r;
    int n;

    Ring(Field f, int r_, int n_);
    int nvars() const { return r + n + 2; }
    int y(int i) const { return i; }
    int x(int j) const { return r + 1 + j; }
    bool is_y(int v) const { return v <= r; }
    std::string var_name(int v) const;
    bool operator==(const Ring& o) const { return field == o.field && r == o.r && n == o.n; }
};
using RingPtr = std::shared_ptr<const Ring>;
RingPtr make_ring(const Field& f, int r, int n);

struct Monomial {
    std::array<std::uint8_t, kMaxVars> e{};

    int degree() const;
    Bidegree bidegree(const Ring& R) const;
    Monomial operator*(const Monomial& o) const;  // throws on exponent overflow
    bool divides(const Monomial& o) const;
    Monomial quotient(const Monomial& o) const;  // this / o, requires o | this
    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
    static Monomial var(int v, int power = 1);
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

// Graded lex, larger first; Y_0 > .. > Y_r > X_0 > .. > X_n.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;  // a before b
};

class Polynomial {
public:
    using Terms = std::map<Monomial, Scalar, MonomialOrder>;

    Polynomial() = default;
    explicit Polynomial(RingPtr R) : ring_(std::move(R)) {}

    static Polynomial constant(RingPtr R, const Scalar& c);
    static Polynomial variable(RingPtr R, int v, int power = 1);
    static Polynomial monomial(RingPtr R, const Monomial& m, const Scalar& c);

    const Ring& ring() const { return *ring_; }
    const RingPtr& ring_ptr() const { return ring_; }
    const Field& field() const { return ring_->field; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    // nullopt for the zero polynomial; throws WrongBidegree if not bihomogeneous
    std::optional<Bidegree> bidegree() const;
    bool is_bihomogeneous() const;

    Scalar coefficient(const Monomial& m) const;
    void add_term(const Monomial& m, const Scalar& c);
    const Monomial& leading_monomial() const { return terms_.begin()->first; }
    const Scalar& leading_coefficient() const { return terms_.begin()->second; }

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial scaled(const Scalar& c) const;
    Polynomial times_monomial(const Monomial& m, const Scalar& c) const;
    Polynomial pow(int e) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

private:
    void check_same(const Polynomial& o) const;
    RingPtr ring_;
    Terms terms_;
};

Polynomial derivative(const Polynomial& f, int var);
Polynomial exact_divide(const Polynomial& f, const Polynomial& g);

// substitute scalar values for some variables (others untouched)
Polynomial substitute(const Polynomial& f, const std::map<int, Scalar>& values);
// same polynomial read in another ring with identical variable layout rules
Polynomial change_ring(const Polynomial& f, RingPtr target, const std::vector<int>& var_map);

std::vector<Monomial> monomials_of_bidegree(const Ring& R, Bidegree d);
std::size_t count_monomials(const Ring& R, Bidegree d);
std::size_t binomial_size(int n, int k);

Polynomial parse_poly(std::string_view text, RingPtr R);
std::string format_poly(const Polynomial& f);
std::string format_monomial(const Ring& R, const Monomial& m);

}  // namespace qec
