#include "kohmoto/farey.hpp"

#include "kohmoto/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace kohmoto {

// ---------------------------------------------------------------- continued fractions

ContinuedFraction::ContinuedFraction(std::vector<long> digits) : d_(std::move(digits)) {
    if (d_.empty() || d_[0] != 0) throw PreconditionError("continued fraction must start with the placeholder digit 0");
    if (d_.size() >= 2 && d_[1] < 0) throw PreconditionError("continued fraction digit a_0 must be >= 0");
    for (size_t i = 2; i < d_.size(); ++i)
        if (d_[i] < 1) throw PreconditionError("continued fraction digits after a_0 must be >= 1");
}

ContinuedFraction ContinuedFraction::append(long k) const {
    auto d = d_;
    d.push_back(k);
    return ContinuedFraction(std::move(d));
}

ContinuedFraction ContinuedFraction::truncate(size_t len) const {
    if (len == 0 || len > d_.size()) throw PreconditionError("bad truncation length");
    return ContinuedFraction(std::vector<long>(d_.begin(), d_.begin() + static_cast<long>(len)));
}

std::string ContinuedFraction::str() const {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < d_.size(); ++i) os << (i ? "," : "") << d_[i];
    os << ']';
    return os.str();
}

Rational cf_eval(const ContinuedFraction& c) {
    const auto& d = c.digits();
    if (d.size() < 2) throw PreconditionError("continued fraction " + c.str() + " has no value");
    mpq_class v(d.back());
    for (size_t i = d.size() - 1; i-- > 1;) {
        v = d[i] + 1 / v;
    }
    return Rational(v);
}

std::vector<mpz_class> regular_cf(const Rational& r) {
    std::vector<mpz_class> out;
    mpz_class p = r.num(), q = r.den();
    while (q != 0) {
        mpz_class a, rem;
        mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
        out.push_back(a);
        p = q;
        q = rem;
    }
    return out;
}

std::pair<ContinuedFraction, ContinuedFraction> cf_forms(const Rational& r) {
    if (r < 0 || r > 1) throw PreconditionError("cf_forms needs r in [0,1], got " + r.str());
    if (r == 0) return {ContinuedFraction({0, 0}), ContinuedFraction({0, 0})};
    if (r == 1) return {ContinuedFraction({0, 0, 1}), ContinuedFraction({0, 0, 1})};
    std::vector<long> s{0};
    for (const auto& a : regular_cf(r)) {
        if (!a.fits_slong_p()) throw PreconditionError("continued fraction digit too large");
        s.push_back(a.get_si());
    }
    std::vector<long> l = s;
    l.back() -= 1;
    l.push_back(1);
    return {ContinuedFraction(std::move(s)), ContinuedFraction(std::move(l))};
}

// ---------------------------------------------------------------- quadratic irrationals

mpz_class floor_quadratic(const mpz_class& a, const mpz_class& b, const mpz_class& d, const mpz_class& c) {
    mpz_class b2d = b * b * d, s;
    mpz_sqrt(s.get_mpz_t(), b2d.get_mpz_t());
    mpz_class fl;
    if (s * s == b2d)
        fl = b >= 0 ? s : mpz_class(-s);
    else
        fl = b >= 0 ? s : mpz_class(-s - 1);
    mpz_class num = a + fl, out;
    mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), c.get_mpz_t());
    return out;
}

namespace {

// sign of u + v sqrt(d), d > 0 non-square
int sign_quadratic(const mpz_class& u, const mpz_class& v, const mpz_class& d) {
    int su = sgn(u), sv = sgn(v);
    if (sv == 0) return su;
    if (su == 0 || su == sv) return sv;
    mpz_class lhs = u * u, rhs = v * v * d;
    int c = cmp(lhs, rhs);  // |u| vs |v| sqrt(d)
    return c > 0 ? su : sv;
}

struct Mat2 {
    mpz_class a{1}, b{0}, c{0}, d{1};
    void push(long p) {  // *this = *this * [[p,1],[1,0]]
        mpz_class na = a * p + b, nc = c * p + d;
        b = a;
        d = c;
        a = na;
        c = nc;
    }
};

}  // namespace

QuadraticIrrational::QuadraticIrrational(std::vector<long> preperiod, std::vector<long> period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
    if (pre_.size() < 2 || pre_[0] != 0 || pre_[1] != 0)
        throw PreconditionError("quadratic irrational preperiod must start [0,0,...] (value in (0,1))");
    for (size_t i = 2; i < pre_.size(); ++i)
        if (pre_[i] < 1) throw PreconditionError("continued fraction digits after a_0 must be >= 1");
    if (per_.empty()) throw PreconditionError("quadratic irrational needs a nonempty period");
    for (long p : per_)
        if (p < 1) throw PreconditionError("period digits must be >= 1");

    // primitive period
    for (size_t len = 1; len <= per_.size(); ++len) {
        if (per_.size() % len) continue;
        bool ok = true;
        for (size_t i = len; i < per_.size() && ok; ++i) ok = per_[i] == per_[i - len];
        if (ok) {
            per_.resize(len);
            break;
        }
    }
    // shortest preperiod
    while (pre_.size() > 2 && pre_.back() == per_.back()) {
        pre_.pop_back();
        std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
    }

    // y = [p1; p2, ..., pk, y]  =>  Q y^2 + (Q' - P) y - P' = 0
    Mat2 m;
    for (long p : per_) m.push(p);
    mpz_class s = m.a - m.d, t = 2 * m.c;
    mpz_class D = (m.a - m.d) * (m.a - m.d) + 4 * m.c * m.b;
    // x = (A y + A') / (B y + B') over the preperiod digits a_0, a_1, ...
    Mat2 pm;
    for (size_t i = 1; i < pre_.size(); ++i) pm.push(pre_[i]);
    const mpz_class &A = pm.a, &A1 = pm.b, &B = pm.c, &B1 = pm.d;
    mpz_class nr = A * s + A1 * t, dr = B * s + B1 * t;
    mpz_class alpha = nr * dr - A * B * D;
    mpz_class beta = (A * B1 - A1 * B) * t;
    mpz_class gamma = dr * dr - B * B * D;
    if (gamma < 0) {
        alpha = -alpha;
        beta = -beta;
        gamma = -gamma;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), alpha.get_mpz_t(), beta.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), gamma.get_mpz_t());
    if (g > 1) {
        alpha /= g;
        beta /= g;
        gamma /= g;
    }
    form_ = {alpha, beta, D, gamma};
}

long QuadraticIrrational::digit(size_t i) const {
    size_t idx = i + 1;
    if (idx < pre_.size()) return pre_[idx];
    return per_[(idx - pre_.size()) % per_.size()];
}

mpz_class QuadraticIrrational::floor_times(const mpz_class& n) const {
    return floor_quadratic(n * form_.a, n * form_.b, form_.d, form_.c);
}

int QuadraticIrrational::compare(const Rational& r) const {
    // sign(q(a + b sqrt d) - p c)
    return sign_quadratic(r.den() * form_.a - r.num() * form_.c, r.den() * form_.b, form_.d);
}

double QuadraticIrrational::to_double() const {
    return (form_.a.get_d() + form_.b.get_d() * std::sqrt(form_.d.get_d())) / form_.c.get_d();
}

std::string QuadraticIrrational::str() const {
    std::ostringstream os;
    os << "cf:" << ContinuedFraction(pre_).str() << "per[";
    for (size_t i = 0; i < per_.size(); ++i) os << (i ? "," : "") << per_[i];
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------- Farey points

FareyPoint FareyPoint::exact(const Rational& r) {
    if (r < 0 || r > 1) throw PreconditionError("point " + r.str() + " outside [0,1]");
    return {Kind::Exact, r};
}

FareyPoint FareyPoint::plus(const Rational& r) {
    if (r < 0 || r >= 1) throw PreconditionError("r+ needs r in [0,1), got " + r.str());
    return {Kind::Plus, r};
}

FareyPoint FareyPoint::minus(const Rational& r) {
    if (r <= 0 || r > 1) throw PreconditionError("r- needs r in (0,1], got " + r.str());
    return {Kind::Minus, r};
}

FareyPoint FareyPoint::irrational(const QuadraticIrrational& x) { return FareyPoint(x); }

namespace {

std::vector<long> parse_digit_list(const std::string& s, const std::string& whole) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw PreconditionError("malformed digit list in '" + whole + "'");
    std::vector<long> out;
    std::string body = s.substr(1, s.size() - 2), tok;
    std::istringstream is(body);
    while (std::getline(is, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }), tok.end());
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw PreconditionError("malformed digit '" + tok + "' in '" + whole + "'");
        out.push_back(std::stol(tok));
    }
    return out;
}

}  // namespace

FareyPoint FareyPoint::parse(const std::string& s) {
    if (s.rfind("cf:", 0) == 0) {
        auto p = s.find("per");
        if (p == std::string::npos) throw PreconditionError("expected cf:[...]per[...], got '" + s + "'");
        return irrational(QuadraticIrrational(parse_digit_list(s.substr(3, p - 3), s), parse_digit_list(s.substr(p + 3), s)));
    }
    if (s.empty()) throw PreconditionError("empty point");
    if (s.back() == '+') return plus(Rational::parse(s.substr(0, s.size() - 1)));
    if (s.back() == '-' && s.size() > 1) return minus(Rational::parse(s.substr(0, s.size() - 1)));
    return exact(Rational::parse(s));
}

const Rational& FareyPoint::base() const {
    if (kind_ == Kind::Irrational) throw PreconditionError("irrational point has no base rational");
    return r_;
}

const QuadraticIrrational& FareyPoint::quadratic() const {
    if (kind_ != Kind::Irrational) throw PreconditionError("point is not irrational");
    return *q_;
}

double FareyPoint::to_double() const { return kind_ == Kind::Irrational ? q_->to_double() : r_.to_double(); }

std::string FareyPoint::str() const {
    switch (kind_) {
        case Kind::Exact: return r_.str();
        case Kind::Plus: return r_.str() + "+";
        case Kind::Minus: return r_.str() + "-";
        default: return q_->str();
    }
}

namespace {

int rank(FareyPoint::Kind k) { return k == FareyPoint::Kind::Minus ? -1 : k == FareyPoint::Kind::Plus ? 1 : 0; }

std::strong_ordering ord(int c) {
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

// lexicographic comparison of regular expansions; odd positions reverse the order
int compare_irrationals(const QuadraticIrrational& x, const QuadraticIrrational& y) {
    size_t bound = x.preperiod().size() + y.preperiod().size() + x.period().size() * y.period().size() + 2;
    for (size_t i = 0; i < bound; ++i) {
        long a = x.digit(i), b = y.digit(i);
        if (a == b) continue;
        int c = a < b ? -1 : 1;
        return i % 2 == 0 ? c : -c;
    }
    return 0;
}

}  // namespace

std::strong_ordering compare_points(const FareyPoint& x, const FareyPoint& y) {
    using K = FareyPoint::Kind;
    if (x.kind() != K::Irrational && y.kind() != K::Irrational) {
        auto c = x.base() <=> y.base();
        if (c != 0) return c;
        return rank(x.kind()) <=> rank(y.kind());
    }
    if (x.kind() == K::Irrational && y.kind() == K::Irrational) return ord(compare_irrationals(x.quadratic(), y.quadratic()));
    if (x.kind() == K::Irrational) return ord(x.quadratic().compare(y.base()));
    return ord(-y.quadratic().compare(x.base()));
}

Side parse_side(const std::string& s) {
    if (s == "plus" || s == "+") return Side::Plus;
    if (s == "minus" || s == "-") return Side::Minus;
    throw PreconditionError("side must be plus or minus, got '" + s + "'");
}

std::string side_name(Side s) { return s == Side::Plus ? "plus" : "minus"; }

FareyPoint side_point(const Rational& r, Side s) { return s == Side::Plus ? FareyPoint::plus(r) : FareyPoint::minus(r); }

// ---------------------------------------------------------------- Farey numbers

Rational mediant(const Rational& a, const Rational& b) { return Rational(a.num() + b.num(), a.den() + b.den()); }

bool is_neighbor_pair(const Rational& a, const Rational& b) { return b.num() * a.den() - a.num() * b.den() == 1; }

long emergence_level(const FareyNeighborPair& pair) {
    mpz_class k = pair.lower.den() + pair.upper.den();
    return k.get_si();
}

namespace {

void check_in_fm(const Rational& r, long m) {
    if (m < 1) throw PreconditionError("Farey level must be >= 1");
    if (r < 0 || r > 1 || r.den() > m) throw PreconditionError(r.str() + " is not in F_" + std::to_string(m));
}

// largest a + j*r (mediant-wise) with denominator <= m
Rational extend(const Rational& nb, const Rational& r, long m) {
    mpz_class j = (mpz_class(m) - nb.den()) / r.den();
    return Rational(nb.num() + j * r.num(), nb.den() + j * r.den());
}

}  // namespace

std::pair<std::optional<Rational>, std::optional<Rational>> farey_neighbors(const Rational& r, long m) {
    check_in_fm(r, m);
    if (r == 0) return {std::nullopt, Rational(1, m)};
    if (r == 1) return {Rational(m - 1, m), std::nullopt};
    auto lng = cf_forms(r).second;  // [0, a_0, ..., a_n, 1]
    size_t n = lng.size() - 3;
    Rational t1 = cf_eval(lng.truncate(n + 1));  // [0, a_0, ..., a_{n-1}]
    Rational t2 = cf_eval(lng.truncate(n + 2));  // [0, a_0, ..., a_n]
    Rational lo = n % 2 ? t1 : t2, hi = n % 2 ? t2 : t1;
    return {extend(lo, r, m), extend(hi, r, m)};
}

std::pair<std::optional<Rational>, std::optional<Rational>> farey_neighbors_stern_brocot(const Rational& r, long m) {
    check_in_fm(r, m);
    if (r == 0) return {std::nullopt, Rational(1, m)};
    if (r == 1) return {Rational(m - 1, m), std::nullopt};
    Rational L(0), R(1);
    for (;;) {
        Rational c = mediant(L, R);
        if (c == r) break;
        (r < c ? R : L) = c;
    }
    while (mediant(L, r).den() <= m) L = mediant(L, r);
    while (mediant(r, R).den() <= m) R = mediant(r, R);
    return {L, R};
}

Rational simplest_rational_between(const FareyPoint& lo, const FareyPoint& hi) {
    if (!(lo < hi)) throw PreconditionError("simplest_rational_between needs lo < hi, got " + lo.str() + ", " + hi.str());
    auto where = [&](const Rational& s) {  // -1 below lo, 0 inside, +1 above hi
        auto e = FareyPoint::exact(s);
        if (e < lo) return -1;
        if (hi < e) return 1;
        return 0;
    };
    if (where(Rational(0)) == 0) return Rational(0);
    if (where(Rational(1)) == 0) return Rational(1);
    Rational L(0), R(1);
    for (;;) {
        Rational c = mediant(L, R);
        int w = where(c);
        if (w == 0) return c;
        (w < 0 ? L : R) = c;
    }
}

Rational farey_distance(const FareyPoint& x, const FareyPoint& y) {
    auto c = compare_points(x, y);
    if (c == 0) return Rational(0);
    const Rational s = c < 0 ? simplest_rational_between(x, y) : simplest_rational_between(y, x);
    return Rational(mpz_class(1), s.den());
}

}  // namespace kohmoto
