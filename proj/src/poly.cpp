#include "kohmoto/poly.hpp"

#include "kohmoto/errors.hpp"

#include <sstream>

namespace kohmoto {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
    mpq_class v(0);
    for (size_t i = c_.size(); i-- > 0;) v = v * x.mpq() + c_[i].mpq();
    return Rational(v);
}

Polynomial Polynomial::derivative() const {
    std::vector<Rational> d;
    for (size_t i = 1; i < c_.size(); ++i) d.push_back(Rational(static_cast<long>(i)) * c_[i]);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return (Rational(1) / leading()) * *this;
}

std::string Polynomial::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        const Rational& a = c_[i];
        if (a.is_zero()) continue;
        Rational m = abs(a);
        os << (a.sign() < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        bool unit = m == Rational(1);
        if (!unit || i == 0) os << (m.den() == 1 ? m.num().get_str() : m.str());
        if (i > 0) os << (unit ? "" : "*") << var << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return os.str();
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i].mpq() * b.c_[j].mpq();
    std::vector<Rational> out;
    out.reserve(c.size());
    for (auto& x : c) out.emplace_back(x);
    return Polynomial(std::move(out));
}

Polynomial operator*(const Rational& s, const Polynomial& a) {
    std::vector<Rational> c;
    for (auto& x : a.c_) c.push_back(s * x);
    return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw PreconditionError("polynomial division by zero");
    std::vector<mpq_class> r;
    for (auto& x : a.coeffs()) r.push_back(x.mpq());
    long db = b.degree();
    std::vector<mpq_class> q(std::max<long>(a.degree() - db + 1, 0), 0);
    mpq_class lead = b.leading().mpq();
    for (long i = a.degree(); i >= db; --i) {
        if (r[i] == 0) continue;
        mpq_class f = r[i] / lead;
        q[i - db] = f;
        for (long j = 0; j <= db; ++j) r[i - db + j] -= f * b.coeffs()[j].mpq();
    }
    std::vector<Rational> qq, rr;
    for (auto& x : q) qq.emplace_back(x);
    for (long i = 0; i < std::min<long>(db, static_cast<long>(r.size())); ++i) rr.emplace_back(r[i]);
    return {Polynomial(std::move(qq)), Polynomial(std::move(rr))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        auto r = divmod(x, y).second;
        x = y;
        y = r.monic();
    }
    return x.monic();
}

namespace {

using u64 = unsigned long long;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    for (; e; e >>= 1, a = mulmod(a, a, p))
        if (e & 1) r = mulmod(r, a, p);
    return r;
}

u64 reduce(const mpz_class& z, u64 p) { return mpz_fdiv_ui(z.get_mpz_t(), p); }

// degree of gcd(f, g) over Z/p; -2 if a denominator vanishes mod p
long gcd_degree_mod(const Polynomial& f, const Polynomial& g, u64 p) {
    auto lift = [&](const Polynomial& h, std::vector<u64>& out) {
        for (auto& c : h.coeffs()) {
            u64 d = reduce(c.den(), p);
            if (d == 0) return false;
            out.push_back(mulmod(reduce(c.num(), p), powmod(d, p - 2, p), p));
        }
        while (!out.empty() && out.back() == 0) out.pop_back();
        return true;
    };
    std::vector<u64> a, b;
    if (!lift(f, a) || !lift(g, b)) return -2;
    if (static_cast<long>(a.size()) - 1 != f.degree()) return -2;  // leading coefficient vanished
    while (!b.empty()) {
        // a <- a mod b
        u64 inv = powmod(b.back(), p - 2, p);
        while (a.size() >= b.size()) {
            u64 fct = mulmod(a.back(), inv, p);
            size_t shift = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + p - mulmod(fct, b[j], p)) % p;
            while (!a.empty() && a.back() == 0) a.pop_back();
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return static_cast<long>(a.size()) - 1;
}

}  // namespace

bool is_squarefree(const Polynomial& p) {
    if (p.degree() <= 1) return true;
    Polynomial d = p.derivative();
    for (u64 prime : {2305843009213693951ULL, 4611686018427387847ULL, 1000000007ULL, 998244353ULL}) {
        long g = gcd_degree_mod(p, d, prime);
        if (g == 0) return true;
    }
    return gcd(p, d).degree() == 0;
}

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
    std::vector<Polynomial> chain{p, p.derivative()};
    while (!chain.back().is_zero()) {
        auto r = divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero()) break;
        // keep coefficients small: positive rescaling preserves signs
        Rational lead = abs(r.leading());
        chain.push_back((Rational(-1) / lead) * r);
    }
    return chain;
}

namespace {

long variations(const std::vector<Polynomial>& chain, const Rational& x) {
    long v = 0;
    int prev = 0;
    for (auto& p : chain) {
        int s = p(x).sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

}  // namespace

long sturm_count(const std::vector<Polynomial>& chain, const Rational& a, const Rational& b) {
    return variations(chain, a) - variations(chain, b);
}

// ---------------------------------------------------------------- bivariate

BiPolynomial BiPolynomial::constant(long c) {
    BiPolynomial p;
    p.c_ = {{mpz_class(c)}};
    p.trim();
    return p;
}

BiPolynomial BiPolynomial::E() {
    BiPolynomial p;
    p.c_ = {{mpz_class(0)}, {mpz_class(1)}};
    return p;
}

BiPolynomial BiPolynomial::V() {
    BiPolynomial p;
    p.c_ = {{mpz_class(0), mpz_class(1)}};
    return p;
}

void BiPolynomial::trim() {
    for (auto& row : c_)
        while (!row.empty() && row.back() == 0) row.pop_back();
    while (!c_.empty() && c_.back().empty()) c_.pop_back();
}

bool BiPolynomial::is_zero() const { return c_.empty(); }

const mpz_class& BiPolynomial::coeff(size_t i, size_t j) const {
    static const mpz_class zero(0);
    if (i >= c_.size() || j >= c_[i].size()) return zero;
    return c_[i][j];
}

Polynomial BiPolynomial::at_V(const Rational& v) const {
    std::vector<Rational> out;
    for (auto& row : c_) {
        mpq_class s(0);
        for (size_t j = row.size(); j-- > 0;) s = s * v.mpq() + row[j];
        out.emplace_back(s);
    }
    return Polynomial(std::move(out));
}

namespace {

template <class F>
BiPolynomial combine(const std::vector<std::vector<mpz_class>>& a, const std::vector<std::vector<mpz_class>>& b, F op,
                     std::vector<std::vector<mpz_class>>& out) {
    out.assign(std::max(a.size(), b.size()), {});
    for (size_t i = 0; i < out.size(); ++i) {
        size_t la = i < a.size() ? a[i].size() : 0, lb = i < b.size() ? b[i].size() : 0;
        out[i].assign(std::max(la, lb), 0);
        for (size_t j = 0; j < out[i].size(); ++j) {
            mpz_class x = j < la ? a[i][j] : mpz_class(0), y = j < lb ? b[i][j] : mpz_class(0);
            out[i][j] = op(x, y);
        }
    }
    return {};
}

}  // namespace

BiPolynomial operator+(const BiPolynomial& a, const BiPolynomial& b) {
    BiPolynomial r;
    combine(a.c_, b.c_, [](const mpz_class& x, const mpz_class& y) { return mpz_class(x + y); }, r.c_);
    r.trim();
    return r;
}

BiPolynomial operator-(const BiPolynomial& a, const BiPolynomial& b) {
    BiPolynomial r;
    combine(a.c_, b.c_, [](const mpz_class& x, const mpz_class& y) { return mpz_class(x - y); }, r.c_);
    r.trim();
    return r;
}

BiPolynomial operator*(const BiPolynomial& a, const BiPolynomial& b) {
    BiPolynomial r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, {});
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t k = 0; k < b.c_.size(); ++k) {
            auto& row = r.c_[i + k];
            const auto &ra = a.c_[i], &rb = b.c_[k];
            if (ra.empty() || rb.empty()) continue;
            if (row.size() < ra.size() + rb.size() - 1) row.resize(ra.size() + rb.size() - 1, 0);
            for (size_t j = 0; j < ra.size(); ++j) {
                if (ra[j] == 0) continue;
                for (size_t l = 0; l < rb.size(); ++l)
                    if (rb[l] != 0) mpz_addmul(row[j + l].get_mpz_t(), ra[j].get_mpz_t(), rb[l].get_mpz_t());
            }
        }
    r.trim();
    return r;
}

BiPolynomial operator*(long s, const BiPolynomial& a) { return BiPolynomial::constant(s) * a; }

bool operator==(const BiPolynomial& a, const BiPolynomial& b) { return (a - b).is_zero(); }

}  // namespace kohmoto
