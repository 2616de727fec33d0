#include "qec/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>

namespace qec {

Ring::Ring(Field f, int r_, int n_) : field(std::move(f)), r(r_), n(n_) {
    if (r < 0 || n < 0 || r + n + 2 > kMaxVars)
        throw ContextMismatch("ring with r=" + std::to_string(r) + ", n=" + std::to_string(n) +
                              " exceeds the supported variable count");
}

std::string Ring::var_name(int v) const {
    return is_y(v) ? "Y" + std::to_string(v) : "X" + std::to_string(v - r - 1);
}

RingPtr make_ring(const Field& f, int r, int n) { return std::make_shared<const Ring>(f, r, n); }

// ---------------------------------------------------------------- Monomial

int Monomial::degree() const {
    int d = 0;
    for (auto v : e) d += v;
    return d;
}

Bidegree Monomial::bidegree(const Ring& R) const {
    Bidegree b;
    for (int v = 0; v < R.nvars(); ++v) (R.is_y(v) ? b.y : b.x) += e[v];
    return b;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) {
        int s = e[i] + o.e[i];
        if (s > 255) throw QecError("exponent overflow in monomial product");
        m.e[i] = static_cast<std::uint8_t>(s);
    }
    return m;
}

bool Monomial::divides(const Monomial& o) const {
    for (int i = 0; i < kMaxVars; ++i)
        if (e[i] > o.e[i]) return false;
    return true;
}

Monomial Monomial::quotient(const Monomial& o) const {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<std::uint8_t>(e[i] - o.e[i]);
    return m;
}

Monomial Monomial::var(int v, int power) {
    Monomial m;
    m.e[v] = static_cast<std::uint8_t>(power);
    return m;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
    std::uint64_t a, b;
    std::memcpy(&a, m.e.data(), 8);
    std::memcpy(&b, m.e.data() + 8, 8);
    std::uint64_t h = a * 0x9E3779B97F4A7C15ull ^ (b + 0x632BE59BD9B4E019ull + (a << 6) + (a >> 2));
    return static_cast<std::size_t>(h ^ (h >> 31));
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    return std::memcmp(a.e.data(), b.e.data(), kMaxVars) > 0;
}

// -------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(RingPtr R, const Scalar& c) {
    Polynomial p(std::move(R));
    p.add_term(Monomial{}, p.field().from_rational(c));
    return p;
}

Polynomial Polynomial::variable(RingPtr R, int v, int power) {
    Polynomial p(std::move(R));
    p.add_term(Monomial::var(v, power), p.field().from_int(1));
    return p;
}

Polynomial Polynomial::monomial(RingPtr R, const Monomial& m, const Scalar& c) {
    Polynomial p(std::move(R));
    p.add_term(m, p.field().from_rational(c));
    return p;
}

void Polynomial::check_same(const Polynomial& o) const {
    if (ring_ == o.ring_) return;
    if (!ring_ || !o.ring_ || !(*ring_ == *o.ring_))
        throw ContextMismatch("polynomials from different rings");
}

std::optional<Bidegree> Polynomial::bidegree() const {
    if (terms_.empty()) return std::nullopt;
    Bidegree b = terms_.begin()->first.bidegree(*ring_);
    for (auto& [m, c] : terms_)
        if (m.bidegree(*ring_) != b) throw WrongBidegree("polynomial is not bihomogeneous");
    return b;
}

bool Polynomial::is_bihomogeneous() const {
    try {
        bidegree();
        return true;
    } catch (const WrongBidegree&) {
        return false;
    }
}

Scalar Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
    if (Field::is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second = field().add(it->second, c);
        if (Field::is_zero(it->second)) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    r -= o;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (!ring_) ring_ = o.ring_;
    check_same(o);
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (!ring_) ring_ = o.ring_;
    check_same(o);
    for (auto& [m, c] : o.terms_) add_term(m, field().neg(c));
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(ring_);
    for (auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, field().neg(c));
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_same(o);
    Polynomial r(ring_);
    if (is_zero() || o.is_zero()) return r;
    const Field& k = field();
    for (auto& [ma, ca] : terms_)
        for (auto& [mb, cb] : o.terms_) r.add_term(ma * mb, k.mul(ca, cb));
    return r;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
    Polynomial r(ring_);
    if (Field::is_zero(c)) return r;
    for (auto& [m, a] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, field().mul(a, c));
    return r;
}

Polynomial Polynomial::times_monomial(const Monomial& mu, const Scalar& c) const {
    Polynomial r(ring_);
    if (Field::is_zero(c)) return r;
    for (auto& [m, a] : terms_) r.terms_.emplace_hint(r.terms_.end(), m * mu, field().mul(a, c));
    return r;
}

Polynomial Polynomial::pow(int e) const {
    Polynomial r = constant(ring_, 1), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (ring_ && o.ring_) check_same(o);
    return terms_ == o.terms_;
}

// ------------------------------------------------------------- operations

Polynomial derivative(const Polynomial& f, int var) {
    Polynomial d(f.ring_ptr());
    const Field& k = f.field();
    for (auto& [m, c] : f.terms()) {
        if (m.e[var] == 0) continue;
        Monomial q = m;
        q.e[var]--;
        d.add_term(q, k.mul(c, k.from_int(m.e[var])));
    }
    return d;
}

Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
    if (g.is_zero()) throw ZeroElement("division by the zero polynomial");
    Polynomial rem = f, q(f.ring_ptr());
    const Field& k = f.field();
    const Monomial& lg = g.leading_monomial();
    Scalar lc_inv = k.inv(g.leading_coefficient());
    while (!rem.is_zero()) {
        const Monomial& lr = rem.leading_monomial();
        if (!lg.divides(lr)) throw NotDivisible("polynomial is not divisible");
        Monomial t = lr.quotient(lg);
        Scalar c = k.mul(rem.leading_coefficient(), lc_inv);
        q.add_term(t, c);
        rem -= g.times_monomial(t, c);
    }
    return q;
}

Polynomial substitute(const Polynomial& f, const std::map<int, Scalar>& values) {
    Polynomial out(f.ring_ptr());
    const Field& k = f.field();
    for (auto& [m, c] : f.terms()) {
        Monomial q = m;
        Scalar coef = c;
        for (auto& [v, val] : values) {
            if (q.e[v] == 0) continue;
            coef = k.mul(coef, k.pow(val, q.e[v]));
            q.e[v] = 0;
        }
        out.add_term(q, coef);
    }
    return out;
}

Polynomial change_ring(const Polynomial& f, RingPtr target, const std::vector<int>& var_map) {
    Polynomial out(target);
    for (auto& [m, c] : f.terms()) {
        Monomial q;
        for (int v = 0; v < f.ring().nvars(); ++v) {
            if (!m.e[v]) continue;
            if (var_map[v] < 0) throw ContextMismatch("variable has no image in target ring");
            q.e[var_map[v]] = static_cast<std::uint8_t>(q.e[var_map[v]] + m.e[v]);
        }
        out.add_term(q, target->field.from_rational(c));
    }
    return out;
}

namespace {

// all exponent vectors of length len summing to d, lex descending
void compositions(int len, int d, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(len, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == len - 1) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (int a = left; a >= 0; --a) {
            cur[i] = a;
            rec(i + 1, left - a);
        }
    };
    if (len == 0) {
        if (d == 0) out.push_back({});
        return;
    }
    rec(0, d);
}

}  // namespace

std::size_t binomial_size(int n, int k) {
    if (k < 0 || n < k) return 0;
    unsigned long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned long long>(n - k + i) / i;
    return static_cast<std::size_t>(r);
}

std::size_t count_monomials(const Ring& R, Bidegree d) {
    if (!d.nonnegative()) return 0;
    return binomial_size(d.y + R.r, R.r) * binomial_size(d.x + R.n, R.n);
}

std::vector<Monomial> monomials_of_bidegree(const Ring& R, Bidegree d) {
    std::vector<Monomial> out;
    if (!d.nonnegative()) return out;
    std::vector<std::vector<int>> ys, xs;
    compositions(R.r + 1, d.y, ys);
    compositions(R.n + 1, d.x, xs);
    out.reserve(ys.size() * xs.size());
    for (auto& a : ys)
        for (auto& b : xs) {
            Monomial m;
            for (int i = 0; i <= R.r; ++i) m.e[R.y(i)] = static_cast<std::uint8_t>(a[i]);
            for (int j = 0; j <= R.n; ++j) m.e[R.x(j)] = static_cast<std::uint8_t>(b[j]);
            out.push_back(m);
        }
    return out;
}

// ----------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    Parser(std::string_view s, RingPtr R) : s_(s), R_(std::move(R)) {}

    Polynomial run() {
        Polynomial p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(msg, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    mpz_class integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }

    int exponent() {
        mpz_class e = integer();
        if (e > 255) fail("exponent too large");
        return static_cast<int>(e.get_si());
    }

    Polynomial expr() {
        Polynomial acc(R_);
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        Polynomial t = term();
        acc = neg ? -t : t;
        for (;;) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else break;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    Polynomial factor() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        Polynomial base(R_);
        if (c == '(') {
            ++pos_;
            base = expr();
            if (!eat(')')) fail("expected ')'");
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            mpq_class q(integer());
            if (eat('/')) {
                mpz_class d = integer();
                if (d == 0) fail("zero denominator");
                q /= d;
            }
            q.canonicalize();
            base = Polynomial::constant(R_, q);
        } else if (c == 'X' || c == 'Y' || c == 'x' || c == 'y') {
            std::size_t at = pos_++;
            mpz_class idx = integer();
            bool isy = (c == 'Y' || c == 'y');
            int limit = isy ? R_->r : R_->n;
            if (idx > limit) {
                pos_ = at;
                throw UnknownVariable(std::string(1, c) + idx.get_str() + " is not a variable of this ring");
            }
            int i = static_cast<int>(idx.get_si());
            base = Polynomial::variable(R_, isy ? R_->y(i) : R_->x(i));
        } else if (c == '-') {
            ++pos_;
            return -factor();
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
        if (eat('^')) base = base.pow(exponent());
        return base;
    }

    std::string_view s_;
    RingPtr R_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(std::string_view text, RingPtr R) { return Parser(text, std::move(R)).run(); }

std::string format_monomial(const Ring& R, const Monomial& m) {
    std::string s;
    for (int v = 0; v < R.nvars(); ++v) {
        if (!m.e[v]) continue;
        if (!s.empty()) s += "*";
        s += R.var_name(v);
        if (m.e[v] > 1) s += "^" + std::to_string(m.e[v]);
    }
    return s;
}

std::string format_poly(const Polynomial& f) {
    if (f.is_zero()) return "0";
    std::string out;
    const Field& k = f.field();
    for (auto& [m, c] : f.terms()) {
        std::string cs = k.format(c);
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs.erase(0, 1);
        if (out.empty()) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        std::string ms = format_monomial(f.ring(), m);
        if (ms.empty()) out += cs;
        else if (cs == "1") out += ms;
        else out += cs + "*" + ms;
    }
    return out;
}

}  // namespace qec
