#include "kohmoto/rational.hpp"

#include "kohmoto/errors.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace kohmoto {

Rational::Rational(const mpz_class& n, const mpz_class& d) : v_(n, d) {
    if (d == 0) throw PreconditionError("zero denominator");
    v_.canonicalize();
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw PreconditionError("division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
}

std::string Rational::str() const { return num().get_str() + "/" + den().get_str(); }

namespace {

mpz_class parse_int(const std::string& s, const std::string& whole) {
    if (s.empty()) throw PreconditionError("malformed rational '" + whole + "'");
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw PreconditionError("malformed rational '" + whole + "'");
    for (size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) throw PreconditionError("malformed rational '" + whole + "'");
    return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

}  // namespace

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) return Rational(parse_int(s.substr(0, slash), s), parse_int(s.substr(slash + 1), s));

    // decimal: [sign] digits [. digits] [e [sign] digits]
    std::string mant = s, expo;
    auto e = s.find_first_of("eE");
    if (e != std::string::npos) {
        mant = s.substr(0, e);
        expo = s.substr(e + 1);
    }
    std::string digits = mant;
    long frac = 0;
    auto dot = mant.find('.');
    if (dot != std::string::npos) {
        frac = static_cast<long>(mant.size() - dot - 1);
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        if (digits == "" || digits == "-" || digits == "+") throw PreconditionError("malformed rational '" + s + "'");
    }
    mpz_class n = parse_int(digits, s);
    long ex = expo.empty() ? 0 : parse_int(expo, s).get_si();
    if (std::labs(ex) > 100000) throw PreconditionError("exponent out of range in '" + s + "'");
    ex -= frac;
    if (ex >= 0) return Rational(mpz_class(n * pow10(static_cast<unsigned long>(ex))), mpz_class(1));
    return Rational(n, pow10(static_cast<unsigned long>(-ex)));
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational from_double(double x) {
    if (!std::isfinite(x)) throw PreconditionError("non-finite double");
    mpq_class q(x);  // exact binary value
    return Rational(q);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace kohmoto
