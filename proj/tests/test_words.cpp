#include "doctest.h"
#include "kohmoto/errors.hpp"
#include "kohmoto/words.hpp"
#include "oracles.hpp"

#include <random>

using namespace kohmoto;
using FP = FareyPoint;
using Cfg = Configuration;

static Rational R(long p, long q) { return Rational(p, q); }

// chi_[1-alpha,1)(n alpha mod 1), straight from the definition
static Word mechanical_oracle(const Rational& a, long lo, long hi) {
    Word w;
    for (long n = lo; n <= hi; ++n) {
        Rational x = Rational(n) * a;
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
        Rational frac = x - Rational(fl, 1);
        w.push_back(frac >= Rational(1) - a && frac < Rational(1) ? '1' : '0');
    }
    return w;
}

static bool rotation_of(const Word& a, const Word& b) { return a.size() == b.size() && (a + a).find(b) != Word::npos; }

static std::set<Word> S(std::initializer_list<const char*> xs) {
    std::set<Word> s;
    for (auto x : xs) s.insert(x);
    return s;
}

TEST_CASE("mechanical words") {
    CHECK(mechanical_word(R(2, 3), 0, 2) == "011");
    CHECK(mechanical_word(R(0, 1), -3, 3) == "0000000");
    CHECK(mechanical_word(R(1, 1), -3, 3) == "1111111");
    CHECK(mechanical_word(R(1, 2), 0, 3) == "0101");
    for (auto& r : oracle::farey_set(13)) CHECK(mechanical_word(r, -20, 40) == mechanical_oracle(r, -20, 40));
    // irrational slope: compare with a close rational convergent on a short window
    auto g = QuadraticIrrational::golden_mean();
    CHECK(mechanical_word(g, 0, 30) == mechanical_oracle(R(832040, 1346269), 0, 30));
    CHECK_THROWS_AS(mechanical_word(R(1, 2), 3, 2), PreconditionError);
}

TEST_CASE("s_k words") {
    auto s = sk_words(ContinuedFraction({0, 0, 1, 3, 2}));
    REQUIRE(s.size() == 5);
    CHECK(s[4] == "111011101");
    CHECK(s[3] == "1110");
    CHECK(s[2] == "1");
    s = sk_words(ContinuedFraction({0, 0, 2}));
    CHECK(s[2] == "01");
    CHECK(s[1] == "0");
    s = sk_words(ContinuedFraction({0, 0, 1, 1, 1}));
    CHECK(s[4] == "101");
    CHECK(s[3] == "10");
    CHECK(cf_word(ContinuedFraction({0})) == "");
    CHECK(cf_word(ContinuedFraction({0, 0})) == "0");
}

TEST_CASE("period words") {
    CHECK(period_word(R(2, 3)) == "110");
    CHECK(period_word(R(0, 1)) == "0");
    CHECK(period_word(R(7, 9)) == "111011101");
    for (auto& r : oracle::farey_set(40)) {
        Word w = period_word(r);
        CHECK(mpz_class(static_cast<long>(w.size())) == r.den());
        auto cl = cf_forms(r).second;
        CHECK(rotation_of(w, cf_word(cl)));
        CHECK(rotation_of(w, mechanical_word(r, 0, static_cast<long>(w.size()) - 1)));
    }
}

TEST_CASE("defect configurations") {
    auto c = defect_config(R(0, 1), Side::Plus);
    CHECK((c.u() == "0" && c.v() == "1"));
    c = defect_config(R(2, 3), Side::Plus);
    CHECK((c.u() == "110" && c.v() == "1"));
    CHECK(c.notation() == "(110)^inf [1] . (110)^inf");
    c = defect_config(R(1, 2), Side::Minus);
    CHECK((c.u() == "01" && c.v() == "0"));
    c = defect_config(R(7, 9), Side::Plus);
    CHECK((c.u() == "111011110" && c.v() == "11101"));
    c = defect_config(R(1, 1), Side::Minus);
    CHECK((c.u() == "1" && c.v() == "0"));
    CHECK_THROWS_AS(defect_config(R(0, 1), Side::Minus), PreconditionError);
    CHECK_THROWS_AS(defect_config(R(1, 1), Side::Plus), PreconditionError);
    // (2/3)-: the paper's section-4 table lists this under omega_s; the parity rule picks omega_l
    c = defect_config(R(2, 3), Side::Minus);
    CHECK((c.u() == "101" && c.v() == "10"));
    // indexing: impurity at -|v|..-1
    c = defect_config(R(7, 9), Side::Plus);
    CHECK(c.window(-5, -1) == "11101");
    CHECK(c.window(0, 8) == "111011110");
    CHECK(c.window(-14, -6) == "111011110");
}

TEST_CASE("defect limit oracle: one-sided approximants stabilize on the defect dictionary") {
    const long N = 1000;
    for (auto& r : oracle::farey_set(9))
        for (Side side : {Side::Plus, Side::Minus}) {
            if ((r == 0 && side == Side::Minus) || (r == 1 && side == Side::Plus)) continue;
            // x = r +- 1/(qN): closer to r+- than any rational of denominator < N
            Rational x = r + Rational(side == Side::Plus ? 1 : -1, 1) / Rational(r.den() * N, 1);
            long q = x.den().get_si();
            auto per = Cfg::periodic(mechanical_oracle(x, 0, q - 1));
            auto def = defect_config(r, side);
            for (long n = 1; n <= 24; ++n) CHECK(dictionary(per, n).words == dictionary(def, n).words);
        }
}

TEST_CASE("dictionaries") {
    CHECK(dictionary(Cfg::periodic("011"), 2).words == S({"01", "11", "10"}));
    CHECK(dictionary(Cfg::periodic("0"), 5).words == S({"00000"}));
    CHECK(dictionary(Cfg::defect("0", "1"), 2).words == S({"00", "01", "10"}));
}

TEST_CASE("complexity laws") {
    for (auto& r : oracle::farey_set(12)) {
        long q = r.den().get_si();
        auto p = Cfg::periodic(period_word(r));
        for (long n = 1; n <= 3 * q; ++n) CHECK(complexity(p, n) == (n < q ? n + 1 : q));
        if (r < 1)
            for (long n = 1; n <= 3 * q; ++n) CHECK(complexity(defect_config(r, Side::Plus), n) == n + 1);
        if (r > 0)
            for (long n = 1; n <= 3 * q; ++n) CHECK(complexity(defect_config(r, Side::Minus), n) == n + 1);
    }
    auto g = Cfg::sturmian(QuadraticIrrational::golden_mean());
    for (long n = 1; n <= 12; ++n) CHECK(complexity(g, n) == n + 1);
}

TEST_CASE("dictionary slices and Farey cells") {
    auto pts = oracle::farey_set(15);
    for (long m = 1; m <= 12; ++m) {
        auto fm = oracle::farey_set(m);
        for (size_t i = 0; i < pts.size(); i += 3)
            for (size_t j = 0; j < pts.size(); j += 2) {
                auto &a = pts[i], &b = pts[j];
                auto ca = oracle::open_cell(fm, a), cb = oracle::open_cell(fm, b);
                bool same_cell = ca && cb && *ca == *cb;
                bool same_slice = dictionary(Cfg::periodic(period_word(a)), m).words == dictionary(Cfg::periodic(period_word(b)), m).words;
                CHECK(same_slice == (same_cell || a == b));
            }
        for (size_t i = 0; i < fm.size(); ++i)
            for (size_t j = i + 1; j < fm.size(); ++j)
                CHECK(dictionary(Cfg::periodic(period_word(fm[i])), m).words != dictionary(Cfg::periodic(period_word(fm[j])), m).words);
    }
}

TEST_CASE("subshift distance examples") {
    auto d = subshift_distance(Cfg::periodic("0"), Cfg::periodic("1"), 8);
    CHECK(d.value == R(1, 1));
    CHECK(d.certified);
    // slices of (01)^inf and (011)^inf agree at length 1 only
    d = subshift_distance(Cfg::periodic("01"), Cfg::periodic("011"), 16);
    CHECK(d.certified);
    CHECK(d.value == R(1, 2));
    CHECK(d.value == farey_distance(FP::exact(R(1, 2)), FP::exact(R(2, 3))));
    d = subshift_distance(Cfg::defect("110", "1"), Cfg::defect("110", "1"), 3);
    CHECK(d.value == R(0, 1));
    CHECK(d.certified);
    CHECK(subshift_distance(Cfg::periodic("011"), Cfg::periodic("101"), 4).value == R(0, 1));
    // an impurity equal to the period is no impurity
    CHECK(subshift_distance(Cfg::periodic("01"), Cfg::defect("01", "01"), 4).value == R(0, 1));
    // shifted presentations of the same defect orbit
    CHECK(same_orbit(Cfg::defect("110", "1"), Cfg::defect("101", "1")));
    d = subshift_distance(Cfg::periodic("110"), defect_config(R(2, 3), Side::Plus), 1);
    CHECK(!d.certified);
    CHECK(d.value == R(1, 2));
}

TEST_CASE("orbit inclusion") {
    auto per = Cfg::periodic("110");
    auto def = defect_config(R(2, 3), Side::Plus);
    CHECK(orbit_inclusion(per, def, 12));
    CHECK(!orbit_inclusion(def, per, 12));
    CHECK(orbit_inclusion(def, def, 12));
}

TEST_CASE("subshift distance equals Farey distance on random pairs") {
    std::vector<FP> pts;
    for (auto& r : oracle::farey_set(30)) {
        pts.push_back(FP::exact(r));
        if (r < 1) pts.push_back(FP::plus(r));
        if (r > 0) pts.push_back(FP::minus(r));
    }
    pts.push_back(FP::irrational(QuadraticIrrational::golden_mean()));
    pts.push_back(FP::irrational(QuadraticIrrational({0, 0}, {2})));
    pts.push_back(FP::irrational(QuadraticIrrational({0, 0, 3}, {1, 4})));
    std::mt19937 rng(3);
    std::uniform_int_distribution<size_t> pick(0, pts.size() - 1);
    for (int t = 0; t < 250; ++t) {
        auto &x = pts[pick(rng)], &y = pts[pick(rng)];
        auto d = subshift_distance(config_of(x), config_of(y), 64);
        CHECK(d.certified);
        CHECK(d.value == farey_distance(x, y));
    }
}
