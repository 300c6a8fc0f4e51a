#include "doctest.h"
#include "oracles.hpp"

#include "kohmoto/errors.hpp"
#include "kohmoto/spectra.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>

using namespace kohmoto;

namespace {

Rational R(long p, long q = 1) { return Rational(p, q); }
const Rational nano = R(1, 1000000000);

// eigenvalues of the q x q periodic (s = +1) or antiperiodic (s = -1) Bloch matrix, in floating point
std::vector<double> bloch_eigs(const Word& w, double V, int s) {
    const long q = static_cast<long>(w.size());
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(q, q);
    for (long i = 0; i < q; ++i) {
        H(i, i) = w[i] == '1' ? V : 0.0;
        if (q == 1) {
            H(0, 0) += 2.0 * s;
            continue;
        }
        long j = (i + 1) % q;
        double h = (i + 1 == q) ? s : 1.0;
        H(i, j) += h;
        H(j, i) += h;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    return {es.eigenvalues().data(), es.eigenvalues().data() + q};
}

struct Iv {
    Rational lo, hi;
};

Iv imul(const Iv& a, const Iv& b) {
    Rational c[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Iv r{c[0], c[0]};
    for (auto& x : c) r.lo = min(r.lo, x), r.hi = max(r.hi, x);
    return r;
}

// interval Horner evaluation
Iv ieval(const Polynomial& p, const Enclosure& e) {
    Iv x{e.lo, e.hi}, v{R(0), R(0)};
    for (size_t i = p.coeffs().size(); i-- > 0;) {
        v = imul(v, x);
        v.lo += p.coeffs()[i];
        v.hi += p.coeffs()[i];
    }
    return v;
}

Iv iabs(const Iv& a) {
    if (a.lo.sign() >= 0) return a;
    if (a.hi.sign() <= 0) return {-a.hi, -a.lo};
    return {R(0), max(-a.lo, a.hi)};
}

void all_words(size_t maxlen, const std::function<void(const Word&)>& f) {
    for (size_t n = 1; n <= maxlen; ++n)
        for (unsigned long m = 0; m < (1UL << n); ++m) {
            Word w;
            for (size_t i = 0; i < n; ++i) w += (m >> i) & 1 ? '1' : '0';
            f(w);
        }
}

std::vector<Rational> rationals_upto(long Q) {
    std::vector<Rational> out;
    for (long q = 1; q <= Q; ++q)
        for (long p = 0; p <= q; ++p)
            if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    return out;
}

bool disjoint_certified(const Spectrum& s) {
    for (size_t i = 0; i + 1 < s.bands.size(); ++i)
        if (!certainly_below(s.bands[i].hi, s.bands[i + 1].lo)) return false;
    return true;
}

}  // namespace

TEST_CASE("trace polynomial examples") {
    CHECK(trace_poly("0", R(5)) == Polynomial({R(0), R(1)}));
    CHECK(trace_poly("0", R(-3, 7)) == Polynomial({R(0), R(1)}));
    CHECK(trace_poly("01", R(5)) == Polynomial({R(-2), R(-5), R(1)}));
    CHECK(trace_poly("01", R(2, 9)) == Polynomial({R(-2), R(-2, 9), R(1)}));
    // symbolic: E^2 - V E - 2
    BiPolynomial t = trace_poly_symbolic("01");
    CHECK(t == BiPolynomial::E() * BiPolynomial::E() - BiPolynomial::V() * BiPolynomial::E() -
                   BiPolynomial::constant(2));
    Word w = period_word(R(2, 3));
    CHECK(w == "110");
    Polynomial p = trace_poly(w, R(5));
    CHECK(p.degree() == 3);
    CHECK(p.leading() == R(1));
    CHECK(trace_poly("101", R(5)) == p);
    CHECK(trace_poly("011", R(5)) == p);
    CHECK_THROWS_AS(trace_poly("", R(5)), PreconditionError);
    CHECK_THROWS_AS(trace_poly("012", R(5)), PreconditionError);
}

TEST_CASE("trace polynomial of continued fractions") {
    CHECK(trace_poly_cf(ContinuedFraction({0, 0, 2}), R(5)) == trace_poly("01", R(5)));
    CHECK(trace_poly_cf(ContinuedFraction({0, 0}), R(5)) == Polynomial::x());
    CHECK(trace_poly_cf(ContinuedFraction({0}), R(5)) == Polynomial::constant(R(2)));
    // numeric trace agrees with the polynomial
    for (auto E : {R(0), R(3, 7), R(-11, 5), R(9)})
        CHECK(trace_value("1101101", R(5, 2), E) == trace_poly("1101101", R(5, 2))(E));
}

TEST_CASE("cyclic invariance and unit determinant, all words up to length 12") {
    long checked = 0;
    all_words(12, [&](const Word& w) {
        BiPolynomial t = trace_poly_symbolic(w);
        for (size_t j = 1; j < w.size(); ++j) {
            Word rot = w.substr(j) + w.substr(0, j);
            if (!(trace_poly_symbolic(rot) == t)) FAIL("rotation changes trace: " << w);
        }
        if (w.size() <= 10) {
            auto m = transfer_matrix_symbolic(w);
            if (!(m[0] * m[3] - m[1] * m[2] == BiPolynomial::constant(1))) FAIL("det != 1: " << w);
        }
        t.at_V(R(5));
        ++checked;
    });
    CHECK(checked == (1L << 13) - 2);
}

namespace {

// t_{d1}^2 + t_{d0}^2 + t_c^2 - t_{d1} t_{d0} t_c - 4 - V^2
BiPolynomial fricke_defect(const ContinuedFraction& c) {
    BiPolynomial x = trace_poly_symbolic_cf(c), y = trace_poly_symbolic_cf(c.truncate(c.size() - 1)),
                 z = trace_poly_symbolic_cf(c.append(1)), v = BiPolynomial::V();
    return z * z + y * y + x * x - z * y * x - BiPolynomial::constant(4) - v * v;
}

void cfs_upto(size_t digits, long maxdigit, const std::function<void(const ContinuedFraction&)>& f) {
    std::function<void(std::vector<long>&)> rec = [&](std::vector<long>& d) {
        f(ContinuedFraction(d));
        if (d.size() - 2 == digits) return;
        for (long a = 1; a <= maxdigit; ++a) {
            d.push_back(a);
            rec(d);
            d.pop_back();
        }
    };
    std::vector<long> d{0, 0};
    rec(d);
}

}  // namespace

TEST_CASE("Fricke-Vogt invariant, symbolic V") {
    long n = 0;
    cfs_upto(4, 3, [&](const ContinuedFraction& c) {
        ++n;
        if (!fricke_defect(c).is_zero()) FAIL("invariant fails for " << c.str());
    });
    CHECK(n == 1 + 3 + 9 + 27 + 81);
    // one level deeper with smaller digits
    cfs_upto(5, 2, [&](const ContinuedFraction& c) {
        if (c.n() == 5 && !fricke_defect(c).is_zero()) FAIL("invariant fails for " << c.str());
    });
    // the invariant is a genuine constraint: a wrong triple fails
    ContinuedFraction c({0, 0, 2, 1});
    BiPolynomial x = trace_poly_symbolic_cf(c), y = trace_poly_symbolic_cf(c.truncate(c.size() - 1)),
                 z = trace_poly_symbolic_cf(c.append(2));
    CHECK(!(z * z + y * y + x * x - z * y * x - BiPolynomial::constant(4) - BiPolynomial::V() * BiPolynomial::V())
               .is_zero());
}

TEST_CASE("trace recursion at band edges") {
    const Rational V = R(5);
    for (auto r : {R(0), R(1, 2), R(2, 3), R(3, 5), R(1, 4)}) {
        ContinuedFraction c = cf_forms(r).first;
        Polynomial tc = trace_poly_cf(c, V), t0 = trace_poly_cf(c.truncate(c.size() - 1), V),
                   t1 = trace_poly_cf(c.append(1), V);
        Spectrum s = spectrum_periodic(r, V, R(1, 1L << 40));
        for (auto& b : s.bands)
            for (const Enclosure* e : {&b.lo, &b.hi}) {
                Iv tv = ieval(tc, *e);
                int sign = tv.lo > R(0) ? 1 : (tv.hi < R(0) ? -1 : 0);
                REQUIRE(sign != 0);
                REQUIRE(imul(tv, tv).lo > R(3));  // |t| = 2 at the edge
                for (long k = 1; k <= 8; ++k) {
                    Polynomial tk1 = trace_poly_cf(c.append(k + 1), V);
                    Iv lhs = iabs(ieval(tk1, *e));
                    Iv a = ieval(t1, *e), b0 = ieval(t0, *e);
                    Rational f = R(1) + R(1, k);
                    Iv comb{f * a.lo - (sign > 0 ? b0.hi : -b0.lo), f * a.hi - (sign > 0 ? b0.lo : -b0.hi)};
                    Iv rhs = iabs(comb);
                    rhs.lo = rhs.lo * R(k);
                    rhs.hi = rhs.hi * R(k);
                    CHECK(lhs.lo <= rhs.hi);
                    CHECK(rhs.lo <= lhs.hi);
                    // exact form: t_c - (+-2) divides the defect of the recursion
                    Polynomial rest = sign > 0 ? tk1 - R(k + 1) * t1 + R(k) * t0
                                               : tk1 - R(k % 2 ? -1 : 1) * (R(k + 1) * t1 + R(k) * t0);
                    CHECK(divmod(rest, tc - Polynomial::constant(R(2 * sign))).second.is_zero());
                }
            }
    }
}

TEST_CASE("closed-form spectra") {
    Spectrum s0 = spectrum_periodic(R(0), R(5), nano);
    REQUIRE(s0.bands.size() == 1);
    CHECK(s0.bands[0].lo == Enclosure::point(R(-2)));
    CHECK(s0.bands[0].hi == Enclosure::point(R(2)));
    Spectrum s1 = spectrum_periodic(R(1), R(5), nano);
    REQUIRE(s1.bands.size() == 1);
    CHECK(s1.bands[0].lo == Enclosure::point(R(3)));
    CHECK(s1.bands[0].hi == Enclosure::point(R(7)));

    Spectrum h = spectrum_periodic(R(1, 2), R(5), nano);
    REQUIRE(h.bands.size() == 2);
    double r41 = std::sqrt(41.0);
    double expect[] = {(5 - r41) / 2, 0, 5, (5 + r41) / 2};
    const Enclosure* e[] = {&h.bands[0].lo, &h.bands[0].hi, &h.bands[1].lo, &h.bands[1].hi};
    for (int i = 0; i < 4; ++i) {
        CHECK(e[i]->width() <= nano);
        CHECK(e[i]->lo.to_double() <= expect[i] + 1e-12);
        CHECK(e[i]->hi.to_double() >= expect[i] - 1e-12);
    }
    // exact certificate for the irrational edges: E^2 - 5E - 4 changes sign across the enclosure
    Polynomial g({R(-4), R(-5), R(1)});
    CHECK(g(h.bands[0].lo.lo).sign() * g(h.bands[0].lo.hi).sign() <= 0);
    CHECK(g(h.bands[1].hi.lo).sign() * g(h.bands[1].hi.hi).sign() <= 0);
    CHECK(disjoint_certified(h));

    Spectrum t = spectrum_periodic(R(2, 3), R(5), nano);
    CHECK(t.bands.size() == 3);
    CHECK(disjoint_certified(t));
}

TEST_CASE("degenerate coupling") {
    CHECK(spectrum_periodic(R(0), R(0), nano).bands.size() == 1);
    CHECK_THROWS_AS(spectrum_periodic(R(1, 2), R(0), nano), DegeneracyError);
    CHECK_THROWS_AS(spectrum_periodic(R(1, 2), R(5), R(0)), PreconditionError);
    CHECK_THROWS_AS(spectrum_periodic(R(3, 2), R(5), nano), PreconditionError);
    CHECK_THROWS_AS(band_classify(R(1, 2), 1, R(0), nano), PreconditionError);
    CHECK_THROWS_AS(defect_spectrum(R(1, 2), Side::Plus, R(0), nano), PreconditionError);
}

TEST_CASE("band counts and edges against the Bloch-matrix oracle, q <= 40") {
    const Rational tol = R(1, 1L << 30);
    for (auto V : {R(1, 2), R(2), R(5)}) {
        for (auto& r : rationals_upto(40)) {
            Word w = period_word(r);
            Spectrum s = spectrum_periodic(r, V, tol);
            long q = static_cast<long>(w.size());
            if (static_cast<long>(s.bands.size()) != q || !disjoint_certified(s))
                FAIL("bad band structure at r = " << r << ", V = " << V);
            auto plus = bloch_eigs(w, V.to_double(), 1), minus = bloch_eigs(w, V.to_double(), -1);
            std::vector<double> edges;
            for (auto& b : s.bands) {
                for (const Enclosure* e : {&b.lo, &b.hi}) {
                    if (e->width() > tol) FAIL("enclosure too wide");
                    edges.push_back(e->mid().to_double());
                }
            }
            std::vector<double> all = plus;
            all.insert(all.end(), minus.begin(), minus.end());
            std::sort(all.begin(), all.end());
            for (size_t i = 0; i < all.size(); ++i)
                if (std::abs(all[i] - edges[i]) > 1e-7) FAIL("edge mismatch at r = " << r << ", V = " << V);
        }
    }
}

TEST_CASE("generic Sturm chain agrees with the minor-sequence count") {
    const Rational V = R(2);
    for (auto& r : rationals_upto(9)) {
        Word w = period_word(r);
        Polynomial t = trace_poly(w, V);
        Spectrum s = spectrum_periodic(r, V, R(1, 1 << 20));
        for (int sg : {1, -1}) {
            auto chain = sturm_chain(t - Polynomial::constant(R(2 * sg)));
            CHECK(sturm_count(chain, R(-10), R(10)) == static_cast<long>(w.size()));
        }
        // every edge enclosure holds exactly one root of t^2 - 4
        auto chain4 = sturm_chain(t * t - Polynomial::constant(R(4)));
        for (auto& b : s.bands)
            for (const Enclosure* e : {&b.lo, &b.hi}) {
                if (e->is_point()) {
                    CHECK(abs(t(e->lo)) == R(2));
                } else {
                    CHECK(sturm_count(chain4, e->lo, e->hi) == 1);
                }
            }
    }
}

TEST_CASE("membership") {
    CHECK(membership(R(0), R(0), R(5)));
    CHECK(!membership(R(3), R(0), R(5)));
    CHECK(membership(R(0), R(1, 2), R(5)));
    CHECK(membership(R(7), R(1), R(5)));
    CHECK(!membership(R(1), R(1, 2), R(5)));
    // agreement with the certified bands away from the edges
    Spectrum s = spectrum_periodic(R(3, 7), R(2), R(1, 1 << 20));
    for (auto& b : s.bands) CHECK(membership(Enclosure(b.lo.hi, b.hi.lo).mid(), R(3, 7), R(2)));
    for (size_t i = 0; i + 1 < s.bands.size(); ++i)
        CHECK(!membership(Enclosure(s.bands[i].hi.hi, s.bands[i + 1].lo.lo).mid(), R(3, 7), R(2)));
}

TEST_CASE("band classification examples") {
    auto a = band_classify(R(0), 1, R(5), nano);
    CHECK(a.r_k == R(1));
    CHECK(a.typeB.size() == 1);
    CHECK(a.typeA.empty());
    CHECK(a.k0_reached);
    CHECK(a.typeB[0].lo == Enclosure::point(R(3)));
    auto b = band_classify(R(2, 3), 2, R(5), nano);
    CHECK(b.typeB.size() == 3);
    CHECK(b.typeA.size() + b.typeB.size() == static_cast<size_t>(cf_eval(cf_forms(R(2, 3)).first.append(2)).den().get_si()));
    // interleaving for r = 1/2 (c = [0,0,2], n = 1): type-B bands alternate with the bands of sigma_r
    for (long k = 1; k <= 6; ++k) {
        auto c = band_classify(R(1, 2), k, R(5), R(1, 1L << 40));
        REQUIRE(c.typeB.size() == 2);
        if (!c.k0_reached) continue;
        Spectrum s = spectrum_periodic(R(1, 2), R(5), R(1, 1L << 40));
        CHECK(certainly_below(c.typeB[0].hi, s.bands[0].lo));
        CHECK(certainly_below(s.bands[0].hi, c.typeB[1].lo));
        CHECK(certainly_below(c.typeB[1].hi, s.bands[1].lo));
    }
}

TEST_CASE("nesting, inclusion, at-most-k and triple disjointness") {
    const Rational V = R(5), tol = R(1, 1L << 40);
    for (auto r : {R(0), R(1, 2), R(2, 3), R(1, 3), R(3, 5), R(1)}) {
        ContinuedFraction c = cf_forms(r).first;
        Spectrum sr = spectrum_periodic(r, V, tol);
        std::vector<Band> prev;
        for (long k = 1; k <= 10; ++k) {
            auto cls = band_classify(c, k, V, tol);
            if (!prev.empty()) {
                for (size_t j = 0; j < prev.size(); ++j) {
                    const Band &in = cls.typeB[j], &out = prev[j];
                    CHECK(out.lo.lo <= in.lo.lo);
                    CHECK(in.hi.hi <= out.hi.hi);
                }
            }
            prev = cls.typeB;
            if (k > 6) continue;
            Spectrum sk = spectrum_of_word(cf_word(c.append(k)), V, tol);
            Spectrum sk1 = spectrum_of_word(cf_word(c.append(k + 1)), V, tol);
            CHECK(bands_contained(sk1.bands, union_bands(sr.bands, sk.bands)));
            for (auto& J : sr.bands) {
                long inside = 0;
                for (auto& I : sk.bands)
                    if (J.lo.hi <= I.lo.lo && I.hi.hi <= J.hi.lo) ++inside;
                CHECK(inside <= k);
            }
            CHECK(intersect_bands(intersect_bands(sr.bands, sk.bands), sk1.bands).empty());
        }
    }
}

TEST_CASE("defect spectra: single impurity") {
    DefectResult d = defect_spectrum_detailed(R(0), Side::Plus, R(5), nano);
    REQUIRE(d.spectrum.points.size() == 1);
    const Enclosure& p = d.spectrum.points[0];
    CHECK(p.width() <= nano);
    // sqrt(29) lies in the enclosure: lo^2 <= 29 <= hi^2
    CHECK(p.lo * p.lo <= R(29));
    CHECK(R(29) <= p.hi * p.hi);
    CHECK(certainly_below(d.spectrum.bands[0].hi, p));
    auto eig = finite_section_eigs(Configuration::defect("0", "1"), 5.0, 2001);
    long above = 0;
    double near = 0;
    for (double e : eig)
        if (e > 2.1) ++above, near = e;
    CHECK(above == 1);
    CHECK(std::abs(near - std::sqrt(29.0)) < 1e-6);
}

TEST_CASE("defect spectra: counts, interleaving, essential spectrum") {
    const Rational V = R(5), tol = R(1, 1000000);
    for (auto r : {R(2, 3), R(1, 4), R(7, 9), R(1, 2)}) {
        Spectrum base = spectrum_periodic(r, V, tol);
        for (Side side : {Side::Plus, Side::Minus}) {
            CAPTURE(r);
            CAPTURE(side_name(side));
            DefectResult d = defect_spectrum_detailed(r, side, V, tol);
            const auto& s = d.spectrum;
            long q = r.den().get_si();
            REQUIRE(static_cast<long>(s.points.size()) == q);
            CHECK(s.bands == base.bands);
            for (auto& p : s.points) CHECK(p.width() <= tol);
            // exactly one point per bounded gap, the last one in an unbounded gap
            long bounded = 0;
            for (size_t i = 0; i + 1 < s.bands.size(); ++i) {
                long in = 0;
                for (auto& p : s.points)
                    if (certainly_below(s.bands[i].hi, p) && certainly_below(p, s.bands[i + 1].lo)) ++in;
                CHECK(in == 1);
                bounded += in;
            }
            CHECK(bounded == q - 1);
            CHECK(lebesgue(s) == lebesgue(base));
            // finite-section oracle: one centred mode at every point, no other centred gap modes
            Configuration cfg = defect_config(r, side);
            auto modes = finite_section_modes(cfg, 5.0, 2001, -10.0, 12.0);
            std::vector<double> centred;
            for (auto& m : modes) {
                bool in_band = false;
                for (auto& b : s.bands)
                    if (m.energy >= b.lo.lo.to_double() - 1e-3 && m.energy <= b.hi.hi.to_double() + 1e-3) in_band = true;
                if (!in_band && m.centre_weight > 0.5) centred.push_back(m.energy);
            }
            REQUIRE(centred.size() == s.points.size());
            for (size_t i = 0; i < centred.size(); ++i) CHECK(std::abs(centred[i] - s.points[i].mid().to_double()) < 1e-4);
        }
    }
    CHECK_THROWS_AS(defect_spectrum(R(0), Side::Minus, V, tol), PreconditionError);
    CHECK_THROWS_AS(defect_spectrum(R(1), Side::Plus, V, tol), PreconditionError);
    CHECK_THROWS_AS(defect_spectrum(R(7, 9), Side::Plus, V, tol, 2), PrecisionError);
}

TEST_CASE("finite sections") {
    auto free = finite_section_eigs(Configuration::periodic("0"), 3.0, 501);
    CHECK(free.size() == 501);
    for (double e : free) CHECK(std::abs(e) <= 2.0 + 1e-2);
    Spectrum s = spectrum_periodic(R(2, 3), R(5), R(1, 1 << 20));
    auto eig = finite_section_eigs(Configuration::periodic(period_word(R(2, 3))), 5.0, 1500);
    long outside = 0;
    for (double e : eig) {
        bool in = false;
        for (auto& b : s.bands)
            if (e >= b.lo.lo.to_double() - 1e-2 && e <= b.hi.hi.to_double() + 1e-2) in = true;
        if (!in) ++outside;
    }
    CHECK(outside <= 4);  // boundary modes only
}

namespace {

Spectrum intervals(std::vector<std::pair<Rational, Rational>> bands, std::vector<Rational> pts = {}) {
    Spectrum s;
    s.tol = R(0);
    for (auto& [a, b] : bands) s.bands.push_back({Enclosure::point(a), Enclosure::point(b)});
    for (auto& p : pts) s.points.push_back(Enclosure::point(p));
    return s;
}

// brute-force Hausdorff distance on a grid of step h
double grid_hausdorff(const Spectrum& a, const Spectrum& b, double h) {
    auto sample = [&](const Spectrum& s) {
        std::vector<double> xs;
        for (auto& band : s.bands)
            for (double x = band.lo.lo.to_double(); x <= band.hi.hi.to_double() + 1e-15; x += h) xs.push_back(x);
        for (auto& p : s.points) xs.push_back(p.lo.to_double());
        return xs;
    };
    auto A = sample(a), B = sample(b);
    auto dir = [](const std::vector<double>& X, const std::vector<double>& Y) {
        double m = 0;
        for (double x : X) {
            double d = 1e300;
            for (double y : Y) d = std::min(d, std::abs(x - y));
            m = std::max(m, d);
        }
        return m;
    };
    return std::max(dir(A, B), dir(B, A));
}

}  // namespace

TEST_CASE("Hausdorff distance and measure") {
    Spectrum a = intervals({{R(-2), R(2)}}), b = intervals({{R(3), R(7)}});
    CHECK(hausdorff(a, b) == Enclosure::point(R(5)));
    CHECK(hausdorff(a, a) == Enclosure::point(R(0)));
    Spectrum c = intervals({{R(0), R(1)}}), d = intervals({{R(0), R(1)}}, {R(2)});
    CHECK(hausdorff(c, d) == Enclosure::point(R(1)));
    CHECK(std::abs(grid_hausdorff(a, b, 1e-3) - 5.0) < 2e-3);
    CHECK(std::abs(grid_hausdorff(c, d, 1e-3) - 1.0) < 2e-3);
    // gap midpoints matter
    Spectrum e = intervals({{R(0), R(10)}}), f = intervals({{R(0), R(1)}, {R(9), R(10)}}, {R(3)});
    CHECK(hausdorff(e, f) == Enclosure::point(R(3)));
    CHECK(std::abs(grid_hausdorff(e, f, 1e-3) - 3.0) < 2e-3);
    // certified spectra against the grid oracle
    Spectrum s1 = spectrum_periodic(R(1, 2), R(5), R(1, 1 << 30)), s2 = spectrum_periodic(R(2, 5), R(5), R(1, 1 << 30));
    Enclosure h = hausdorff(s1, s2);
    CHECK(h.width() <= s1.tol + s2.tol);
    CHECK(std::abs(h.mid().to_double() - grid_hausdorff(s1, s2, 1e-4)) < 2e-4);
    CHECK_THROWS_AS(hausdorff(Spectrum{}, a), PreconditionError);

    CHECK(lebesgue(spectrum_periodic(R(0), R(5), nano)) == Enclosure::point(R(4)));
    CHECK(lebesgue(defect_spectrum(R(0), Side::Plus, R(5), nano)) == Enclosure::point(R(4)));
    Enclosure m = lebesgue(spectrum_periodic(R(1, 2), R(5), nano));
    double expect = std::sqrt(41.0) - 5.0;
    CHECK(m.lo.to_double() <= expect + 1e-12);
    CHECK(m.hi.to_double() >= expect - 1e-12);
    CHECK(m.width() <= R(4) * nano);
}

TEST_CASE("spectrum json round trip and determinism") {
    Spectrum s = defect_spectrum(R(2, 3), Side::Minus, R(5), R(1, 1000000));
    auto j = s.to_json();
    CHECK(j["tol"] == "1/1000000");
    CHECK(j["bands"].size() == 3);
    CHECK(j["points"].size() == 3);
    CHECK(Spectrum::from_json(j) == s);
    // refining elsewhere does not change results at a given tolerance
    spectrum_periodic(R(2, 3), R(5), R(1, 1L << 50));
    Spectrum again = spectrum_periodic(R(2, 3), R(5), R(1, 1000000));
    CHECK(again.bands == s.bands);
}
