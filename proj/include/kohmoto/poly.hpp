#pragma once

#include "kohmoto/rational.hpp"

#include <string>
#include <vector>

namespace kohmoto {

/// Dense univariate polynomial over Q, ascending coefficients, no trailing zeros.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    static Polynomial constant(const Rational& c) { return Polynomial({c}); }
    static Polynomial x() { return Polynomial({Rational(0), Rational(1)}); }

    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational operator()(const Rational& x) const;
    Polynomial derivative() const;
    Polynomial monic() const;
    std::string str(const std::string& var = "E") const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Rational& s, const Polynomial& a);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

private:
    std::vector<Rational> c_;
    void trim();
};

/// Quotient and remainder of a / b.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
/// Monic gcd over Q.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// True iff p has no repeated complex root. A trivial gcd(p, p') modulo a good prime proves it;
/// otherwise the exact gcd over Q decides.
bool is_squarefree(const Polynomial& p);

/// Classical Sturm chain p, p', -rem(p, p'), ... for a squarefree p.
std::vector<Polynomial> sturm_chain(const Polynomial& p);
/// Number of distinct real roots in (a, b].
long sturm_count(const std::vector<Polynomial>& chain, const Rational& a, const Rational& b);

/// Polynomial in (E, V) with integer coefficients: c[i][j] multiplies E^i V^j.
class BiPolynomial {
public:
    BiPolynomial() = default;
    static BiPolynomial constant(long c);
    static BiPolynomial E();
    static BiPolynomial V();

    bool is_zero() const;
    const mpz_class& coeff(size_t i, size_t j) const;
    long degree_E() const { return static_cast<long>(c_.size()) - 1; }
    /// Substitute a rational V.
    Polynomial at_V(const Rational& v) const;

    friend BiPolynomial operator+(const BiPolynomial& a, const BiPolynomial& b);
    friend BiPolynomial operator-(const BiPolynomial& a, const BiPolynomial& b);
    friend BiPolynomial operator*(const BiPolynomial& a, const BiPolynomial& b);
    friend BiPolynomial operator*(long s, const BiPolynomial& a);
    friend bool operator==(const BiPolynomial& a, const BiPolynomial& b);

private:
    std::vector<std::vector<mpz_class>> c_;
    void trim();
};

}  // namespace kohmoto
