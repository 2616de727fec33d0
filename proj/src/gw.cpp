#include "qec/gw.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace qec {

namespace {

Scalar cls(const Field& k, const Scalar& a) { return square_class(k, a).rep; }

std::size_t bit_size(const Scalar& a) {
    return mpz_sizeinbase(a.get_num_mpz_t(), 2) + mpz_sizeinbase(a.get_den_mpz_t(), 2);
}

}  // namespace

GWForm GWForm::hyperbolic(const Field& k, long count) {
    GWForm f(k);
    f.h_ = count;
    return f;
}

GWForm GWForm::diagonal(const Field& k, const std::vector<Scalar>& entries) {
    GWForm f(k);
    for (auto& a : entries) f.add_diag(a);
    return f;
}

long GWForm::rank() const {
    long r = 2 * h_;
    for (auto& [a, c] : diag_) r += c;
    return r;
}

bool GWForm::is_honest() const {
    if (h_ < 0) return false;
    for (auto& [a, c] : diag_)
        if (c < 0) return false;
    return true;
}

std::vector<Scalar> GWForm::entries() const {
    if (!is_honest()) throw NotApplicable("virtual form has no entry list");
    std::vector<Scalar> out;
    for (long i = 0; i < h_; ++i) {
        out.push_back(k_.from_int(1));
        out.push_back(k_.from_int(-1));
    }
    for (auto& [a, c] : diag_)
        for (long i = 0; i < c; ++i) out.push_back(a);
    return out;
}

GWForm& GWForm::add_diag(const Scalar& a, long count) {
    if (count == 0) return *this;
    Scalar key = cls(k_, k_.from_rational(a));
    long& c = diag_[key];
    c += count;
    if (c == 0) diag_.erase(key);
    return *this;
}

GWForm GWForm::operator+(const GWForm& o) const {
    if (k_ != o.k_) throw InvalidField("forms over different fields");
    GWForm r = *this;
    r.h_ += o.h_;
    for (auto& [a, c] : o.diag_) r.add_diag(a, c);
    return r;
}

GWForm GWForm::operator-() const {
    GWForm r(k_);
    r.h_ = -h_;
    for (auto& [a, c] : diag_) r.diag_[a] = -c;
    return r;
}

GWForm GWForm::operator-(const GWForm& o) const { return *this + (-o); }

GWForm GWForm::operator*(const GWForm& o) const {
    if (k_ != o.k_) throw InvalidField("forms over different fields");
    GWForm r(k_);
    // H * x = rank(x) H
    r.h_ = h_ * o.rank() + o.h_ * (rank() - 2 * h_);
    for (auto& [a, c] : diag_)
        for (auto& [b, d] : o.diag_) r.add_diag(k_.mul(a, b), c * d);
    return r;
}

GWForm GWForm::times(long c) const {
    GWForm r(k_);
    r.h_ = h_ * c;
    for (auto& [a, m] : diag_)
        if (m * c) r.diag_[a] = m * c;
    return r;
}

GWForm GWForm::twisted(const Scalar& a) const { return GWForm::diagonal(k_, {a}) * *this; }

namespace {

// does <b, c> represent a? (Q: local conditions; F_p: always)
bool binary_represents(const Field& k, const Scalar& b, const Scalar& c, const Scalar& a) {
    if (!k.is_rational()) return true;
    std::set<mpz_class> primes{2};
    for (auto* x : {&a, &b, &c})
        for (auto& p : prime_support(*x)) primes.insert(p);
    Scalar abc = a * b * c;
    if (hilbert_symbol(b, c, Place::infinity()) != hilbert_symbol(a, abc, Place::infinity())) return false;
    for (auto& p : primes)
        if (hilbert_symbol(b, c, Place::at(p)) != hilbert_symbol(a, abc, Place::at(p))) return false;
    return true;
}

GWForm prime_field_normal_form(const GWForm& f) {
    const Field& k = f.field();
    long R = f.rank();
    Scalar d = discriminant(f).rep;
    GWForm out(k);
    if (R == 0) return out;
    if (R % 2) {
        out.add_h((R - 1) / 2);
        out.add_diag(((R - 1) / 2) % 2 ? k.neg(d) : d);
        return out;
    }
    Scalar e = (R / 2) % 2 ? k.neg(d) : d;
    if (is_square(k, e)) {
        out.add_h(R / 2);
        return out;
    }
    out.add_h(R / 2 - 1);
    out.add_diag(k.from_int(1));
    out.add_diag(k.neg(e));
    return out;
}

}  // namespace

GWForm GWForm::simplified() const {
    GWForm f = *this;
    if (!k_.is_rational() && f.is_honest()) return prime_field_normal_form(f);
    for (;;) {
        f.merge_and_resolve();
        if (!k_.is_rational() || !f.is_honest() || !f.peel_isotropic_triple()) break;
    }
    if (!k_.is_rational() && f.is_honest()) return prime_field_normal_form(f);
    return f;
}

// <a, b, c> = H + <-abc> when <a, b> represents -c
bool GWForm::peel_isotropic_triple() {
    std::vector<Scalar> e;
    for (auto& [a, c] : diag_)
        for (long i = 0; i < std::min(c, 3L); ++i) e.push_back(a);
    if (e.size() > 64) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j)
            for (std::size_t l = j + 1; l < e.size(); ++l) {
                if (!binary_represents(k_, e[i], e[j], k_.neg(e[l]))) continue;
                Scalar a = e[i], b = e[j], c = e[l];
                add_diag(a, -1);
                add_diag(b, -1);
                add_diag(c, -1);
                add_diag(k_.neg(k_.mul(k_.mul(a, b), c)), 1);
                h_ += 1;
                return true;
            }
    return false;
}

void GWForm::merge_and_resolve() {
    GWForm& f = *this;
    // a and -a pair to H (both positive or both negative)
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [a, c] : f.diag_) {
            Scalar na = cls(k_, k_.neg(a));
            if (na == a) {
                // -1 is a square: <a> + <a> = H
                if (c >= 2 || c <= -2) {
                    long pairs = c / 2;
                    f.h_ += pairs;
                    f.add_diag(a, -2 * pairs);
                    changed = true;
                    break;
                }
                continue;
            }
            auto it = f.diag_.find(na);
            if (it == f.diag_.end()) continue;
            long ca = c, cb = it->second;
            if ((ca > 0) != (cb > 0)) continue;
            long t = ca > 0 ? std::min(ca, cb) : std::max(ca, cb);
            f.h_ += t;
            Scalar key = a;
            f.add_diag(key, -t);
            f.add_diag(na, -t);
            changed = true;
            break;
        }
    }
    // resolve negative entries
    changed = true;
    while (changed) {
        changed = false;
        for (auto& [a, c] : f.diag_) {
            if (c >= 0) continue;
            Scalar key = a;
            if (f.h_ > 0) {
                // -<a> = <-a> - H
                f.h_ -= 1;
                f.add_diag(key, 1);
                f.add_diag(k_.neg(key), 1);
                changed = true;
                break;
            }
            // <b> + <c> = <a> + <abc> when <b, c> represents a
            std::vector<Scalar> pos;
            for (auto& [b, cb] : f.diag_)
                for (long i = 0; i < std::min(cb, 2L); ++i) pos.push_back(b);
            bool done = false;
            for (std::size_t i = 0; i < pos.size() && !done; ++i)
                for (std::size_t j = i + 1; j < pos.size() && !done; ++j)
                    if (binary_represents(k_, pos[i], pos[j], key)) {
                        Scalar bi = pos[i], bj = pos[j];
                        f.add_diag(bi, -1);
                        f.add_diag(bj, -1);
                        f.add_diag(key, 1);
                        f.add_diag(k_.mul(k_.mul(key, bi), bj), 1);
                        done = true;
                    }
            if (done) {
                changed = true;
                break;
            }
        }
    }
}

std::string GWForm::str() const {
    std::string out;
    auto put = [&](long c, const std::string& what) {
        if (c == 0) return;
        bool neg = c < 0;
        long a = neg ? -c : c;
        std::string term = (a == 1 ? "" : std::to_string(a) + "*") + what;
        if (out.empty()) out = (neg ? "-" : "") + term;
        else out += (neg ? " - " : " + ") + term;
    };
    put(h_, "H");
    for (auto& [a, c] : diag_) put(c, "<" + k_.format(a) + ">");
    return out.empty() ? "0" : out;
}

// ------------------------------------------------------------ from_gram

std::vector<Scalar> diagonalize(const Field& k, ScalarMatrix A) {
    const std::size_t N = A.size();
    std::vector<Scalar> d;
    for (std::size_t t = 0; t < N; ++t) {
        // smallest nonzero diagonal entry keeps numbers short
        std::size_t best = N;
        for (std::size_t i = t; i < N; ++i)
            if (!Field::is_zero(A[i][i]) && (best == N || bit_size(A[i][i]) < bit_size(A[best][best]))) best = i;
        if (best == N) {
            std::size_t bi = N, bj = N;
            for (std::size_t i = t; i < N && bi == N; ++i)
                for (std::size_t j = i + 1; j < N; ++j)
                    if (!Field::is_zero(A[i][j])) {
                        bi = i;
                        bj = j;
                        break;
                    }
            if (bi == N) throw DegenerateForm("Gram matrix is degenerate");
            // e_i <- e_i + e_j
            for (std::size_t c = t; c < N; ++c) A[bi][c] = k.add(A[bi][c], A[bj][c]);
            for (std::size_t r = t; r < N; ++r) A[r][bi] = k.add(A[r][bi], A[r][bj]);
            best = bi;
        }
        if (best != t) {
            std::swap(A[best], A[t]);
            for (auto& row : A) std::swap(row[best], row[t]);
        }
        const Scalar piv = A[t][t];
        for (std::size_t i = t + 1; i < N; ++i) {
            if (Field::is_zero(A[i][t])) continue;
            Scalar f = k.div(A[i][t], piv);
            for (std::size_t j = t + 1; j < N; ++j)
                if (!Field::is_zero(A[t][j])) A[i][j] = k.sub(A[i][j], k.mul(f, A[t][j]));
            A[i][t] = 0;
        }
        for (std::size_t j = t + 1; j < N; ++j) A[t][j] = 0;
        // restore symmetry below the pivot
        for (std::size_t i = t + 1; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j) A[j][i] = A[i][j];
        d.push_back(piv);
    }
    return d;
}

GWForm from_gram(const Field& k, const ScalarMatrix& A) {
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j)
            if (A[i][j] != A[j][i]) throw DegenerateForm("Gram matrix is not symmetric");
    return GWForm::diagonal(k, diagonalize(k, A)).simplified();
}

// ------------------------------------------------------------ invariants

int signature(const GWForm& f) {
    if (!f.field().is_rational()) throw NotApplicable("signature needs a real place");
    long s = 0;
    for (auto& [a, c] : f.diag()) s += sgn(a) > 0 ? c : -c;
    return static_cast<int>(s);
}

SquareClass discriminant(const GWForm& f) {
    const Field& k = f.field();
    Scalar d = k.from_int((f.h() % 2) ? -1 : 1);
    for (auto& [a, c] : f.diag())
        if (c % 2) d = k.mul(d, a);
    return square_class(k, d);
}

int hasse_invariant(const GWForm& f, const Place& v) {
    if (!f.field().is_rational()) throw NotApplicable("Hasse invariant over F_p is trivial");
    auto e = f.entries();
    int s = 1;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j) s *= hilbert_symbol(e[i], e[j], v);
    return s;
}

std::vector<Place> relevant_places(const GWForm& f) {
    std::set<mpz_class> primes{2};
    for (auto& [a, c] : f.diag())
        for (auto& p : prime_support(a)) primes.insert(p);
    std::vector<Place> out{Place::infinity()};
    for (auto& p : primes) out.push_back(Place::at(p));
    return out;
}

bool gw_equals(const GWForm& a, const GWForm& b) {
    if (a.field() != b.field()) return false;
    const Field& k = a.field();
    // a - b = P - N with P, N honest; then a = b iff P is isometric to N
    GWForm d = a - b;
    GWForm P(k), N(k);
    if (d.h() > 0) P.add_h(d.h());
    else N.add_h(-d.h());
    for (auto& [x, c] : d.diag()) {
        if (c > 0) P.add_diag(x, c);
        else N.add_diag(x, -c);
    }
    if (P.rank() != N.rank()) return false;
    if (!(discriminant(P) == discriminant(N))) return false;
    if (!k.is_rational()) return true;
    if (signature(P) != signature(N)) return false;
    std::set<Place> places;
    for (auto& v : relevant_places(P)) places.insert(v);
    for (auto& v : relevant_places(N)) places.insert(v);
    for (auto& v : places)
        if (hasse_invariant(P, v) != hasse_invariant(N, v)) return false;
    return true;
}

// ------------------------------------------------------- root extensions

ScalarMatrix root_extension_gram(const Field& k, const Scalar& a0, const std::vector<Scalar>& u, int m) {
    Scalar a = k.from_rational(a0);
    if (m < 1) throw Inseparable("degree must be positive");
    if (!k.invertible(mpz_class(m)) || Field::is_zero(a)) throw Inseparable("x^m + a is inseparable");
    if (static_cast<int>(u.size()) > m) throw NotAUnit("element has too many coordinates");
    // Tr(x^t) = m (-a)^(t/m) when m | t, else 0
    auto tr_power = [&](int t) {
        if (t % m) return Scalar(0);
        return k.mul(k.from_int(m), k.pow(k.neg(a), t / m));
    };
    ScalarMatrix G(m, std::vector<Scalar>(m, Scalar(0)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Scalar s = 0;
            for (std::size_t l = 0; l < u.size(); ++l)
                s = k.add(s, k.mul(k.from_rational(u[l]), tr_power(static_cast<int>(l) + i + j)));
            G[i][j] = s;
        }
    return G;
}

GWForm trace_form_root_extension(const Field& k, const Scalar& a, const std::vector<Scalar>& u, int m) {
    auto G = root_extension_gram(k, a, u, m);
    try {
        return from_gram(k, G);
    } catch (const DegenerateForm&) {
        throw NotAUnit("u is not a unit of k[x]/(x^m + a)");
    }
}

GWForm trace_form_root_extension_closed(const Field& k, const Scalar& a0, const Scalar& u0, int m) {
    Scalar a = k.from_rational(a0), u = k.from_rational(u0);
    if (!k.invertible(mpz_class(m)) || Field::is_zero(a)) throw Inseparable("x^m + a is inseparable");
    if (Field::is_zero(u)) throw NotAUnit("u = 0");
    Scalar um = k.mul(u, k.from_int(m));
    GWForm f(k);
    if (m % 2) {
        f.add_h((m - 1) / 2);
        f.add_diag(um);
    } else {
        f.add_h((m - 2) / 2);
        f.add_diag(um);
        f.add_diag(k.neg(k.mul(a, um)));
    }
    return f.simplified();
}

// ------------------------------------------------------------- parsing

GWForm parse_gw(const std::string& text, const Field& k) {
    GWForm f(k);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto fail = [&](const std::string& msg) {
        throw FormSyntaxError("cannot parse form: " + msg + " at position " + std::to_string(i));
    };
    skip();
    if (text.substr(i) == "0") return f;
    bool first = true;
    while (true) {
        skip();
        if (i >= text.size()) {
            if (first) fail("empty input");
            break;
        }
        long sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            fail("expected + or -");
        }
        first = false;
        long count = 1;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::size_t s = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            count = std::stol(text.substr(s, i - s));
            skip();
            if (i < text.size() && text[i] == '*') ++i;
            skip();
        }
        if (i < text.size() && text[i] == 'H') {
            ++i;
            f.add_h(sign * count);
        } else if (i < text.size() && text[i] == '<') {
            std::size_t close = text.find('>', i);
            if (close == std::string::npos) fail("missing '>'");
            std::string num = text.substr(i + 1, close - i - 1);
            num.erase(std::remove_if(num.begin(), num.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
                      num.end());
            mpq_class q;
            if (q.set_str(num, 10) != 0) fail("bad number '" + num + "'");
            q.canonicalize();
            if (q == 0) fail("<0> is not a form");
            f.add_diag(k.from_rational(q), sign * count);
            i = close + 1;
        } else {
            fail("expected H or <a>");
        }
    }
    return f;
}

}  // namespace qec
