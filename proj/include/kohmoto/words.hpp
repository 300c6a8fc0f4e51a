#pragma once

#include "kohmoto/farey.hpp"

#include <set>
#include <string>
#include <vector>

namespace kohmoto {

/// Words over {0,1} are plain strings of '0'/'1'.
using Word = std::string;
void check_word(const Word& w);

/// omega_alpha(n) = 1 iff (n alpha mod 1) in [1 - alpha, 1), for n = lo..hi.
Word mechanical_word(const Rational& alpha, long lo, long hi);
Word mechanical_word(const QuadraticIrrational& alpha, long lo, long hi);

/// [s_{-1}, s_0, ..., s_n] for c = [0, a_0, ..., a_n].
std::vector<Word> sk_words(const ContinuedFraction& c);
/// Last word s_n[c]; the sentinel [0] gives the empty word.
Word cf_word(const ContinuedFraction& c);
/// s_n[c_s(r)], of length q.
Word period_word(const Rational& r);

/// Two-sided word: u^inf . u^inf, u^inf v . u^inf, or a Sturmian word.
class Configuration {
public:
    enum class Kind { Periodic, Defect, Sturmian };

    static Configuration periodic(const Word& u);
    static Configuration defect(const Word& u, const Word& v);
    static Configuration sturmian(const QuadraticIrrational& alpha);

    Kind kind() const { return kind_; }
    const Word& u() const { return u_; }
    const Word& v() const { return v_; }
    const QuadraticIrrational& slope() const { return *alpha_; }

    /// Letter at index n; the impurity of a defect sits at -|v| .. -1.
    char at(long n) const;
    Word window(long lo, long hi) const;
    /// "(110)^inf [1] . (110)^inf"
    std::string notation() const;

private:
    Kind kind_ = Kind::Periodic;
    Word u_, v_;
    std::optional<QuadraticIrrational> alpha_;
};

/// Defect configuration of the one-sided limit r+ / r-.
Configuration defect_config(const Rational& r, Side side);
/// Exact -> periodic, Plus/Minus -> defect, irrational -> Sturmian.
Configuration config_of(const FareyPoint& x);

struct DictionarySlice {
    long length = 0;
    std::set<Word> words;
};

DictionarySlice dictionary(const Configuration& c, long n);
long complexity(const Configuration& c, long n);
/// Whether both configurations have the same orbit closure, decided exactly.
bool same_orbit(const Configuration& a, const Configuration& b);

struct SubshiftDistance {
    Rational value;
    bool certified = false;
};

SubshiftDistance subshift_distance(const Configuration& a, const Configuration& b, long cutoff);
bool orbit_inclusion(const Configuration& sub, const Configuration& super, long cutoff);

}  // namespace kohmoto
