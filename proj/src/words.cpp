#include "kohmoto/words.hpp"

#include "kohmoto/errors.hpp"

#include <algorithm>

namespace kohmoto {

void check_word(const Word& w) {
    for (char c : w)
        if (c != '0' && c != '1') throw PreconditionError("word '" + w + "' is not over {0,1}");
}

namespace {

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

void check_window(long lo, long hi) {
    if (lo > hi) throw PreconditionError("window needs lo <= hi");
}

Word repeat(const Word& w, long times) {
    Word out;
    out.reserve(w.size() * static_cast<size_t>(std::max(times, 0L)));
    for (long i = 0; i < times; ++i) out += w;
    return out;
}

// smallest p dividing |u| with u = (u[0..p))^k
Word primitive_root(const Word& u) {
    for (size_t p = 1; p <= u.size(); ++p) {
        if (u.size() % p) continue;
        bool ok = true;
        for (size_t i = p; i < u.size() && ok; ++i) ok = u[i] == u[i - p];
        if (ok) return u.substr(0, p);
    }
    return u;
}

bool cyclic_rotation(const Word& a, const Word& b) { return a.size() == b.size() && (a + a).find(b) != Word::npos; }

}  // namespace

// omega(n) = floor((n+1) alpha) - floor(n alpha); equivalent to the half-open interval test
Word mechanical_word(const Rational& alpha, long lo, long hi) {
    check_window(lo, hi);
    if (alpha < 0 || alpha > 1) throw PreconditionError("rotation number must lie in [0,1]");
    Word w;
    mpz_class prev = floor_div(mpz_class(lo) * alpha.num(), alpha.den());
    for (long n = lo; n <= hi; ++n) {
        mpz_class next = floor_div(mpz_class(n + 1) * alpha.num(), alpha.den());
        w.push_back(next == prev ? '0' : '1');
        prev = next;
    }
    return w;
}

Word mechanical_word(const QuadraticIrrational& alpha, long lo, long hi) {
    check_window(lo, hi);
    Word w;
    mpz_class prev = alpha.floor_times(mpz_class(lo));
    for (long n = lo; n <= hi; ++n) {
        mpz_class next = alpha.floor_times(mpz_class(n + 1));
        w.push_back(next == prev ? '0' : '1');
        prev = next;
    }
    return w;
}

std::vector<Word> sk_words(const ContinuedFraction& c) {
    if (c.size() < 2) throw PreconditionError("s_k recursion needs [0, a_0, ...]");
    std::vector<Word> s{"1", "0"};
    for (size_t k = 1; k + 1 < c.size(); ++k) {
        long a = c[k + 1];
        if (k == 1)
            s.push_back(repeat(s[1], a - 1) + s[0]);
        else
            s.push_back(repeat(s[k], a) + s[k - 1]);
    }
    return s;
}

Word cf_word(const ContinuedFraction& c) {
    if (c.size() == 1) return "";
    return sk_words(c).back();
}

Word period_word(const Rational& r) { return cf_word(cf_forms(r).first); }

// ---------------------------------------------------------------- configurations

Configuration Configuration::periodic(const Word& u) {
    check_word(u);
    if (u.empty()) throw PreconditionError("periodic configuration needs a nonempty period");
    Configuration c;
    c.kind_ = Kind::Periodic;
    c.u_ = u;
    return c;
}

Configuration Configuration::defect(const Word& u, const Word& v) {
    check_word(u);
    check_word(v);
    if (u.empty()) throw PreconditionError("defect configuration needs a nonempty period");
    Configuration c;
    c.kind_ = Kind::Defect;
    c.u_ = u;
    c.v_ = v;
    return c;
}

Configuration Configuration::sturmian(const QuadraticIrrational& alpha) {
    Configuration c;
    c.kind_ = Kind::Sturmian;
    c.alpha_ = alpha;
    return c;
}

char Configuration::at(long n) const {
    auto mod = [](long a, long m) { return ((a % m) + m) % m; };
    long U = static_cast<long>(u_.size()), L = static_cast<long>(v_.size());
    switch (kind_) {
        case Kind::Periodic: return u_[static_cast<size_t>(mod(n, U))];
        case Kind::Defect:
            if (n >= 0) return u_[static_cast<size_t>(mod(n, U))];
            if (n >= -L) return v_[static_cast<size_t>(n + L)];
            return u_[static_cast<size_t>(mod(n + L, U))];
        default: return mechanical_word(*alpha_, n, n)[0];
    }
}

Word Configuration::window(long lo, long hi) const {
    check_window(lo, hi);
    if (kind_ == Kind::Sturmian) return mechanical_word(*alpha_, lo, hi);
    Word w;
    for (long n = lo; n <= hi; ++n) w.push_back(at(n));
    return w;
}

std::string Configuration::notation() const {
    switch (kind_) {
        case Kind::Periodic: return "(" + u_ + ")^inf";
        case Kind::Defect: return "(" + u_ + ")^inf [" + v_ + "] . (" + u_ + ")^inf";
        default: return "sturmian(" + alpha_->str() + ")";
    }
}

Configuration defect_config(const Rational& r, Side side) {
    if (r < 0 || r > 1) throw PreconditionError("defect_config needs r in [0,1]");
    if (r == 0) {
        if (side == Side::Minus) throw PreconditionError("0- is not a point of the completion");
        return Configuration::defect("0", "1");
    }
    if (r == 1) {
        if (side == Side::Plus) throw PreconditionError("1+ is not a point of the completion");
        return Configuration::defect("1", "0");
    }
    auto [cs, cl] = cf_forms(r);
    auto n = static_cast<size_t>(cs.n());
    // omega_s = (s_n[c_s])^inf s_{n-1}[0,a_0..a_{n-1}] . (s_n[c_s])^inf
    // omega_l = (s_{n+1}[c_l])^inf s_n[0,a_0..a_n] . (s_{n+1}[c_l])^inf
    bool use_short = (n % 2 == 0) == (side == Side::Plus);
    if (use_short) return Configuration::defect(cf_word(cs), cf_word(cs.truncate(n + 1)));
    return Configuration::defect(cf_word(cl), cf_word(cl.truncate(n + 2)));
}

Configuration config_of(const FareyPoint& x) {
    switch (x.kind()) {
        case FareyPoint::Kind::Exact: return Configuration::periodic(period_word(x.base()));
        case FareyPoint::Kind::Plus: return defect_config(x.base(), Side::Plus);
        case FareyPoint::Kind::Minus: return defect_config(x.base(), Side::Minus);
        default: return Configuration::sturmian(x.quadratic());
    }
}

// ---------------------------------------------------------------- dictionaries

DictionarySlice dictionary(const Configuration& c, long n) {
    if (n < 1) throw PreconditionError("dictionary length must be >= 1");
    DictionarySlice d{n, {}};
    auto N = static_cast<size_t>(n);
    switch (c.kind()) {
        case Configuration::Kind::Periodic: {
            long U = static_cast<long>(c.u().size());
            Word w = repeat(c.u(), (n + U - 1) / U + 1);
            for (size_t i = 0; i < c.u().size(); ++i) d.words.insert(w.substr(i, N));
            break;
        }
        case Configuration::Kind::Defect: {
            long U = static_cast<long>(c.u().size());
            long m = (n + U - 1) / U + 1;
            Word tail = repeat(c.u(), m);
            Word w = tail + c.v() + tail;
            for (size_t i = 0; i + N <= w.size(); ++i) d.words.insert(w.substr(i, N));
            break;
        }
        default: {
            // A Sturmian word has exactly n+1 factors of length n; scan until all are seen.
            for (long len = 4 * n + 16;; len *= 2) {
                if (len > (1L << 24)) throw PrecisionError("Sturmian dictionary scan did not close");
                Word w = mechanical_word(c.slope(), 0, len - 1);
                for (size_t i = 0; i + N <= w.size(); ++i) d.words.insert(w.substr(i, N));
                if (static_cast<long>(d.words.size()) == n + 1) break;
            }
        }
    }
    return d;
}

long complexity(const Configuration& c, long n) { return static_cast<long>(dictionary(c, n).words.size()); }

namespace {

// A defect configuration that is secretly periodic, e.g. (01)^inf [01] . (01)^inf.
std::optional<Word> periodic_part(const Configuration& c) {
    if (c.kind() == Configuration::Kind::Periodic) return primitive_root(c.u());
    if (c.kind() != Configuration::Kind::Defect) return std::nullopt;
    Word p = primitive_root(c.u());
    long P = static_cast<long>(p.size()), L = static_cast<long>(c.v().size());
    for (long n = -L - 2 * P; n < 2 * P; ++n)
        if (c.at(n) != c.at(n + P)) return std::nullopt;
    return p;
}

}  // namespace

bool same_orbit(const Configuration& a, const Configuration& b) {
    using K = Configuration::Kind;
    if (a.kind() == K::Sturmian || b.kind() == K::Sturmian)
        return a.kind() == b.kind() && a.slope() == b.slope();
    auto pa = periodic_part(a), pb = periodic_part(b);
    if (pa && pb) return cyclic_rotation(*pa, *pb);
    if (pa || pb) return false;
    // two genuine defects: look for a shift aligning them
    Word ra = primitive_root(a.u()), rb = primitive_root(b.u());
    if (!cyclic_rotation(ra, rb)) return false;
    long P = static_cast<long>(ra.size());
    long La = static_cast<long>(a.v().size()), Lb = static_cast<long>(b.v().size());
    long S = La + Lb + 2 * P;
    for (long s = -S; s <= S; ++s) {
        bool ok = true;
        for (long n = -La - Lb - std::labs(s) - P - 1; n <= std::labs(s) + P + 1 && ok; ++n) ok = a.at(n + s) == b.at(n);
        if (ok) return true;
    }
    return false;
}

SubshiftDistance subshift_distance(const Configuration& a, const Configuration& b, long cutoff) {
    if (cutoff < 1) throw PreconditionError("cutoff must be >= 1");
    if (same_orbit(a, b)) return {Rational(0), true};
    for (long m = 1; m <= cutoff; ++m)
        if (dictionary(a, m).words != dictionary(b, m).words) return {Rational(1, m), true};
    return {Rational(1, cutoff + 1), false};
}

bool orbit_inclusion(const Configuration& sub, const Configuration& super, long cutoff) {
    if (cutoff < 1) throw PreconditionError("cutoff must be >= 1");
    for (long m = 1; m <= cutoff; ++m) {
        auto s = dictionary(sub, m).words, t = dictionary(super, m).words;
        if (!std::includes(t.begin(), t.end(), s.begin(), s.end())) return false;
    }
    return true;
}

}  // namespace kohmoto
