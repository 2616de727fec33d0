#include "qec/gradedpiece.hpp"

#include <algorithm>
#include <numeric>

namespace qec {

using ScalarRow = std::vector<std::pair<int, Scalar>>;

struct QuotientPiece::Engine {
    virtual ~Engine() = default;
    // adds a relation, returns true if it enlarged the span
    virtual bool insert(const ScalarRow& row) = 0;
    // reduced form of v modulo the span; only non-pivot columns remain
    virtual ScalarRow reduce(const ScalarRow& v) const = 0;
    virtual bool is_pivot(int col) const = 0;
    virtual std::size_t rank() const = 0;
};

namespace {

// ---- exact rational elimination, fraction free with content removal ----

class RationalEngine final : public QuotientPiece::Engine {
    using Row = std::vector<std::pair<int, mpz_class>>;

public:
    explicit RationalEngine(std::size_t ncols) : pivot_of_(ncols, -1) {}

    bool insert(const ScalarRow& src) override {
        Row row = to_integer(src).first;
        make_primitive(row);
        while (!row.empty()) {
            int p = pivot_of_[row.front().first];
            if (p < 0) {
                if (sgn(row.front().second) < 0)
                    for (auto& e : row) e.second = -e.second;
                pivot_of_[row.front().first] = static_cast<int>(rows_.size());
                rows_.push_back(std::move(row));
                return true;
            }
            mpz_class fa, fb;
            combine_factors(rows_[p].front().second, row.front().second, fa, fb);
            row = combine(row, fa, rows_[p], fb);
            make_primitive(row);
        }
        return false;
    }

    ScalarRow reduce(const ScalarRow& v) const override {
        auto [w, den] = to_integer(v);
        std::size_t i = 0;
        while (i < w.size()) {
            int p = pivot_of_[w[i].first];
            if (p < 0) {
                ++i;
                continue;
            }
            const Row& pr = rows_[p];
            mpz_class fa, fb;
            combine_factors(pr.front().second, w[i].second, fa, fb);
            w = combine(w, fa, pr, fb);
            den *= fa;
            mpz_class g = den;
            for (auto& e : w) {
                if (g == 1) break;
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
            }
            if (g != 1) {
                for (auto& e : w) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
                mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
            }
        }
        ScalarRow out;
        out.reserve(w.size());
        for (auto& e : w) {
            mpq_class q(e.second, den);
            q.canonicalize();
            out.emplace_back(e.first, q);
        }
        return out;
    }

    bool is_pivot(int col) const override { return pivot_of_[col] >= 0; }
    std::size_t rank() const override { return rows_.size(); }

private:
    static std::pair<Row, mpz_class> to_integer(const ScalarRow& src) {
        mpz_class l = 1;
        for (auto& e : src) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
        Row r;
        r.reserve(src.size());
        for (auto& e : src) {
            mpz_class v = l / e.second.get_den();
            r.emplace_back(e.first, v * e.second.get_num());
        }
        return {std::move(r), l};
    }

    static void make_primitive(Row& r) {
        if (r.empty()) return;
        mpz_class g = 0;
        for (auto& e : r) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
            if (g == 1) return;
        }
        for (auto& e : r) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
    }

    // multipliers so that fa*x - fb*pivot cancels the current entry
    static void combine_factors(const mpz_class& piv, const mpz_class& val, mpz_class& fa, mpz_class& fb) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), piv.get_mpz_t(), val.get_mpz_t());
        fa = piv / g;
        fb = val / g;
    }

    // fa*a - fb*b, dropping zeros
    static Row combine(const Row& a, const mpz_class& fa, const Row& b, const mpz_class& fb) {
        Row out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        mpz_class t;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.emplace_back(a[i].first, fa * a[i].second);
                ++i;
            } else if (i == a.size() || b[j].first < a[i].first) {
                out.emplace_back(b[j].first, -(fb * b[j].second));
                ++j;
            } else {
                t = fa * a[i].second - fb * b[j].second;
                if (t != 0) out.emplace_back(a[i].first, t);
                ++i;
                ++j;
            }
        }
        return out;
    }

    std::vector<int> pivot_of_;
    std::vector<Row> rows_;
};

// ---- elimination over F_p with 64-bit residues ----

class PrimeEngine final : public QuotientPiece::Engine {
    using u64 = std::uint64_t;
    using Row = std::vector<std::pair<int, u64>>;

public:
    PrimeEngine(std::size_t ncols, std::int64_t p) : pivot_of_(ncols, -1), p_(static_cast<u64>(p)) {}

    bool insert(const ScalarRow& src) override {
        Row row = convert(src);
        while (!row.empty()) {
            int p = pivot_of_[row.front().first];
            if (p < 0) {
                u64 inv = inverse(row.front().second);
                for (auto& e : row) e.second = e.second * inv % p_;
                pivot_of_[row.front().first] = static_cast<int>(rows_.size());
                rows_.push_back(std::move(row));
                return true;
            }
            row = axpy(row, row.front().second, rows_[p]);
        }
        return false;
    }

    ScalarRow reduce(const ScalarRow& v) const override {
        Row w = convert(v);
        std::size_t i = 0;
        while (i < w.size()) {
            int p = pivot_of_[w[i].first];
            if (p < 0) {
                ++i;
                continue;
            }
            w = axpy(w, w[i].second, rows_[p]);
        }
        ScalarRow out;
        for (auto& e : w) out.emplace_back(e.first, Scalar(static_cast<unsigned long>(e.second)));
        return out;
    }

    bool is_pivot(int col) const override { return pivot_of_[col] >= 0; }
    std::size_t rank() const override { return rows_.size(); }

private:
    Row convert(const ScalarRow& src) const {
        Row r;
        r.reserve(src.size());
        for (auto& e : src) {
            u64 v = e.second.get_num().get_ui() % p_;
            if (v) r.emplace_back(e.first, v);
        }
        return r;
    }

    u64 inverse(u64 a) const {
        u64 r = 1, e = p_ - 2;
        while (e) {
            if (e & 1) r = r * a % p_;
            a = a * a % p_;
            e >>= 1;
        }
        return r;
    }

    // a - c*b
    Row axpy(const Row& a, u64 c, const Row& b) const {
        Row out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        u64 nc = (p_ - c) % p_;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                out.emplace_back(b[j].first, nc * b[j].second % p_);
                ++j;
            } else {
                u64 t = (a[i].second + nc * b[j].second) % p_;
                if (t) out.emplace_back(a[i].first, t);
                ++i;
                ++j;
            }
        }
        return out;
    }

    std::vector<int> pivot_of_;
    std::vector<Row> rows_;
    u64 p_;
};

}  // namespace

QuotientPiece QuotientPiece::build(const RingPtr& R, std::span<const Polynomial> generators, Bidegree d,
                                   std::size_t max_columns) {
    QuotientPiece q;
    q.ring_ = R;
    q.d_ = d;
    std::size_t ncols = count_monomials(*R, d);
    if (ncols > max_columns)
        throw SizeLimitExceeded("graded piece " + d.str() + " has " + std::to_string(ncols) +
                                " monomials, above the limit of " + std::to_string(max_columns));
    q.columns_ = monomials_of_bidegree(*R, d);
    q.index_.reserve(q.columns_.size() * 2);
    for (std::size_t i = 0; i < q.columns_.size(); ++i) q.index_.emplace(q.columns_[i], static_cast<int>(i));

    std::vector<ScalarRow> rows;
    for (const Polynomial& g : generators) {
        if (g.is_zero()) continue;
        if (&g.ring() != R.get() && !(g.ring() == *R)) throw ContextMismatch("generator from another ring");
        Bidegree e = *g.bidegree();
        Bidegree rest = d - e;
        if (!rest.nonnegative()) continue;
        for (const Monomial& mu : monomials_of_bidegree(*R, rest)) {
            ScalarRow row;
            row.reserve(g.size());
            for (auto& [m, c] : g.terms()) row.emplace_back(q.index_.at(m * mu), c);
            std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
            rows.push_back(std::move(row));
        }
    }
    q.relations_ = rows.size();
    std::sort(rows.begin(), rows.end(), [](const ScalarRow& a, const ScalarRow& b) {
        if (a.front().first != b.front().first) return a.front().first < b.front().first;
        return a.size() < b.size();
    });

    if (R->field.is_rational())
        q.engine_ = std::make_shared<RationalEngine>(ncols);
    else
        q.engine_ = std::make_shared<PrimeEngine>(ncols, R->field.characteristic());
    for (auto& row : rows) q.engine_->insert(row);

    for (std::size_t c = 0; c < ncols; ++c)
        if (!q.engine_->is_pivot(static_cast<int>(c))) {
            q.coord_of_col_[static_cast<int>(c)] = q.basis_.size();
            q.basis_.push_back(q.columns_[c]);
            q.basis_col_.push_back(static_cast<int>(c));
        }
    return q;
}

std::size_t QuotientPiece::rank() const { return engine_->rank(); }

Polynomial QuotientPiece::basis_element(std::size_t i) const {
    return Polynomial::monomial(ring_, basis_.at(i), 1);
}

std::vector<Scalar> QuotientPiece::normal_form(const Polynomial& f) const {
    std::vector<Scalar> coords(basis_.size(), Scalar(0));
    if (f.is_zero()) return coords;
    if (!(f.ring() == *ring_)) throw ContextMismatch("normal form in a piece of another ring");
    ScalarRow v;
    v.reserve(f.size());
    for (auto& [m, c] : f.terms()) {
        auto it = index_.find(m);
        if (it == index_.end())
            throw WrongBidegree("monomial " + format_monomial(*ring_, m) + " not in piece " + d_.str());
        v.emplace_back(it->second, c);
    }
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (auto& [col, c] : engine_->reduce(v)) coords[coord_of_col_.at(col)] = c;
    return coords;
}

bool QuotientPiece::is_zero_class(const Polynomial& f) const {
    for (auto& c : normal_form(f))
        if (!Field::is_zero(c)) return false;
    return true;
}

Polynomial QuotientPiece::reduce(const Polynomial& f) const {
    auto coords = normal_form(f);
    Polynomial out(ring_);
    for (std::size_t i = 0; i < coords.size(); ++i) out.add_term(basis_[i], coords[i]);
    return out;
}

}  // namespace qec
