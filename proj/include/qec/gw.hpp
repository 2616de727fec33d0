#pragma once

#include "qec/field.hpp"

#include <map>
#include <string>
#include <vector>

namespace qec {

struct DegenerateForm : QecError { using QecError::QecError; };
struct Inseparable : QecError { using QecError::QecError; };
struct NotAUnit : QecError { using QecError::QecError; };
struct NotApplicable : QecError { using QecError::QecError; };
struct FormSyntaxError : QecError { using QecError::QecError; };

using ScalarMatrix = std::vector<std::vector<Scalar>>;

// Element of GW(k): h*H + sum count_a <a>. Counts may be negative, which
// makes the element virtual. Keys are square-class representatives.
class GWForm {
public:
    explicit GWForm(Field k) : k_(std::move(k)) {}

    static GWForm hyperbolic(const Field& k, long count = 1);
    static GWForm diagonal(const Field& k, const std::vector<Scalar>& entries);
    static GWForm one(const Field& k) { return diagonal(k, {k.from_int(1)}); }

    const Field& field() const { return k_; }
    long h() const { return h_; }
    const std::map<Scalar, long>& diag() const { return diag_; }

    long rank() const;
    bool is_honest() const;  // no negative multiplicities
    // honest entry list with H expanded as <1>, <-1>
    std::vector<Scalar> entries() const;

    GWForm& add_diag(const Scalar& a, long count = 1);
    GWForm& add_h(long count) { h_ += count; return *this; }

    GWForm operator+(const GWForm& o) const;
    GWForm operator-(const GWForm& o) const;
    GWForm operator*(const GWForm& o) const;
    GWForm operator-() const;
    GWForm times(long c) const;
    GWForm twisted(const Scalar& a) const;  // <a> * this

    // merge hyperbolic pairs and resolve subtractions where possible
    GWForm simplified() const;

    std::string str() const;

private:
    void merge_and_resolve();
    bool peel_isotropic_triple();

    Field k_;
    long h_ = 0;
    std::map<Scalar, long> diag_;
};

// congruence diagonalization of a symmetric nondegenerate matrix
std::vector<Scalar> diagonalize(const Field& k, ScalarMatrix A);
GWForm from_gram(const Field& k, const ScalarMatrix& A);

int signature(const GWForm& f);                 // Q only
SquareClass discriminant(const GWForm& f);      // class of the determinant
int hasse_invariant(const GWForm& f, const Place& v);  // honest forms, Q only
std::vector<Place> relevant_places(const GWForm& f);

bool gw_equals(const GWForm& a, const GWForm& b);

// Tr_{K/k}(u * v * w) on K = k[x]/(x^m + a), u given on the power basis
GWForm trace_form_root_extension(const Field& k, const Scalar& a, const std::vector<Scalar>& u, int m);
ScalarMatrix root_extension_gram(const Field& k, const Scalar& a, const std::vector<Scalar>& u, int m);
// closed form for u in k
GWForm trace_form_root_extension_closed(const Field& k, const Scalar& a, const Scalar& u, int m);

GWForm parse_gw(const std::string& text, const Field& k);

}  // namespace qec
