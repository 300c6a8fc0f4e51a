#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>

namespace kohmoto {

/// Reduced fraction over GMP integers. The denominator is always positive.
class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}  // NOLINT: integers convert implicitly
    Rational(const mpz_class& n, const mpz_class& d);
    Rational(long n, long d) : Rational(mpz_class(n), mpz_class(d)) {}
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }
    const mpq_class& mpq() const { return v_; }

    double to_double() const { return v_.get_d(); }
    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }

    /// Always "p/q", also for integers ("0/1", "1/1").
    std::string str() const;
    /// Accepts "p/q", "n", and decimals such as "0.25" or "1e-12" (converted exactly).
    static Rational parse(const std::string& s);

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

private:
    mpq_class v_{0};
};

Rational abs(const Rational& r);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
/// Dyadic rational nearest below x's double value; only used to seed searches.
Rational from_double(double x);
std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace kohmoto
