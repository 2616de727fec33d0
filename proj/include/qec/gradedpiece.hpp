#pragma once

#include "qec/poly.hpp"

#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

namespace qec {

struct SizeLimitExceeded : QecError { using QecError::QecError; };

// A graded piece (R/I)_d of a quotient by a homogeneous ideal, described by
// an echelon basis of I_d in the monomial basis of R_d. Columns follow the
// canonical monomial order, so pivots are the largest monomials of each
// relation and the quotient basis consists of standard monomials.
class QuotientPiece {
public:
    static QuotientPiece build(const RingPtr& R, std::span<const Polynomial> generators,
                               Bidegree d, std::size_t max_columns = 200000);

    Bidegree bidegree() const { return d_; }
    const Ring& ring() const { return *ring_; }
    std::size_t ambient_dim() const { return columns_.size(); }
    std::size_t rank() const;
    std::size_t dim() const { return basis_.size(); }
    std::size_t relation_count() const { return relations_; }

    const std::vector<Monomial>& ambient() const { return columns_; }
    // quotient basis monomials
    const std::vector<Monomial>& basis() const { return basis_; }
    Polynomial basis_element(std::size_t i) const;

    // coordinates of the class of f on the quotient basis
    std::vector<Scalar> normal_form(const Polynomial& f) const;
    bool is_zero_class(const Polynomial& f) const;
    // the standard-monomial representative of the class of f
    Polynomial reduce(const Polynomial& f) const;

    struct Engine;  // elimination state, one of two arithmetic flavours

private:
    RingPtr ring_;
    Bidegree d_{};
    std::vector<Monomial> columns_;
    std::unordered_map<Monomial, int, MonomialHash> index_;
    std::vector<Monomial> basis_;
    std::vector<int> basis_col_;
    std::unordered_map<int, std::size_t> coord_of_col_;
    std::size_t relations_ = 0;
    std::shared_ptr<Engine> engine_;
};

}  // namespace qec
