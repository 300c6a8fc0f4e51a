#pragma once

#include "kohmoto/rational.hpp"

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kohmoto {

/// Digit string [0, a_0, a_1, ..., a_n]; the leading 0 is a placeholder.
/// The one-digit string [0] is allowed as "empty" sentinel (it has no value).
class ContinuedFraction {
public:
    ContinuedFraction() : d_{0, 0} {}
    explicit ContinuedFraction(std::vector<long> digits);

    const std::vector<long>& digits() const { return d_; }
    size_t size() const { return d_.size(); }
    /// index of the last digit (a_n); -1 for the sentinel [0]
    long n() const { return static_cast<long>(d_.size()) - 2; }
    long operator[](size_t i) const { return d_[i]; }

    ContinuedFraction append(long k) const;
    ContinuedFraction truncate(size_t len) const;  // keep the first len digits
    std::string str() const;

    friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;

private:
    std::vector<long> d_;
};

Rational cf_eval(const ContinuedFraction& c);
/// (short, long); sentinels [0,0] for 0 and [0,0,1] for 1 in both slots.
std::pair<ContinuedFraction, ContinuedFraction> cf_forms(const Rational& r);
/// Regular expansion [b0; b1, ..., bk] of a rational (no placeholder, last digit >= 2 unless k = 0).
std::vector<mpz_class> regular_cf(const Rational& r);

/// x = (a + b sqrt(d)) / c, c > 0, d not a perfect square.
struct QuadraticForm {
    mpz_class a, b, d, c;
};

/// Eventually periodic continued fraction with value in (0,1).
/// preperiod is written with the placeholder: [0, a_0, a_1, ..., a_j], a_0 = 0.
class QuadraticIrrational {
public:
    QuadraticIrrational(std::vector<long> preperiod, std::vector<long> period);

    static QuadraticIrrational golden_mean() { return {{0, 0}, {1}}; }

    const std::vector<long>& preperiod() const { return pre_; }
    const std::vector<long>& period() const { return per_; }
    /// i-th digit of the regular expansion [a_0; a_1, ...] (placeholder skipped).
    long digit(size_t i) const;
    const QuadraticForm& form() const { return form_; }
    /// floor(n * x), exact.
    mpz_class floor_times(const mpz_class& n) const;
    /// sign of x - r, exact
    int compare(const Rational& r) const;
    double to_double() const;
    std::string str() const;

    friend bool operator==(const QuadraticIrrational& x, const QuadraticIrrational& y) {
        return x.pre_ == y.pre_ && x.per_ == y.per_;
    }

private:
    std::vector<long> pre_, per_;
    QuadraticForm form_;
};

/// floor((a + b sqrt(d)) / c) for c > 0, d >= 0 not a perfect square (or b = 0).
mpz_class floor_quadratic(const mpz_class& a, const mpz_class& b, const mpz_class& d, const mpz_class& c);

/// Element of the Farey completion of [0,1].
class FareyPoint {
public:
    enum class Kind { Exact, Plus, Minus, Irrational };

    static FareyPoint exact(const Rational& r);
    static FareyPoint plus(const Rational& r);
    static FareyPoint minus(const Rational& r);
    static FareyPoint irrational(const QuadraticIrrational& x);
    /// "p/q", "p/q+", "p/q-", "0+", "1-", "cf:[0,a0,...]per[...]"
    static FareyPoint parse(const std::string& s);

    Kind kind() const { return kind_; }
    bool is_rational_based() const { return kind_ != Kind::Irrational; }
    const Rational& base() const;  // the rational r of Exact/Plus/Minus
    const QuadraticIrrational& quadratic() const;
    double to_double() const;
    std::string str() const;

private:
    FareyPoint(Kind k, Rational r) : kind_(k), r_(std::move(r)) {}
    explicit FareyPoint(QuadraticIrrational q) : kind_(Kind::Irrational), q_(std::move(q)) {}

    Kind kind_;
    Rational r_;
    std::optional<QuadraticIrrational> q_;
};

std::strong_ordering compare_points(const FareyPoint& x, const FareyPoint& y);
inline bool operator==(const FareyPoint& x, const FareyPoint& y) { return compare_points(x, y) == 0; }
inline bool operator<(const FareyPoint& x, const FareyPoint& y) { return compare_points(x, y) < 0; }

enum class Side { Plus, Minus };
Side parse_side(const std::string& s);  // "plus"/"+" or "minus"/"-"
std::string side_name(Side s);
/// Plus(r) or Minus(r)
FareyPoint side_point(const Rational& r, Side s);

struct FareyNeighborPair {
    Rational lower, upper;
    long level = 1;
};

Rational mediant(const Rational& a, const Rational& b);
/// (r_*, r^*) in F_m. Continued-fraction route.
std::pair<std::optional<Rational>, std::optional<Rational>> farey_neighbors(const Rational& r, long m);
/// Same result by walking the Stern-Brocot tree.
std::pair<std::optional<Rational>, std::optional<Rational>> farey_neighbors_stern_brocot(const Rational& r, long m);
/// q(lower) + q(upper)
long emergence_level(const FareyNeighborPair& pair);
bool is_neighbor_pair(const Rational& a, const Rational& b);

/// Minimal-denominator rational s with lo <= s <= hi in completion order.
Rational simplest_rational_between(const FareyPoint& lo, const FareyPoint& hi);
Rational farey_distance(const FareyPoint& x, const FareyPoint& y);

}  // namespace kohmoto
