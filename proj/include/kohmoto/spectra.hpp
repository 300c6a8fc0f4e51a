#pragma once

#include "kohmoto/farey.hpp"
#include "kohmoto/poly.hpp"
#include "kohmoto/words.hpp"

#include <array>
#include <string>
#include <vector>

#include "json.hpp"

namespace kohmoto {

/// Closed rational interval known to contain a real number.
struct Enclosure {
    Rational lo, hi;

    Enclosure() = default;
    Enclosure(Rational l, Rational h);
    static Enclosure point(const Rational& x) { return {x, x}; }

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / Rational(2); }
    bool is_point() const { return lo == hi; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    std::string str() const;
    friend bool operator==(const Enclosure&, const Enclosure&) = default;
};

/// true when every value in a is strictly below every value in b
bool certainly_below(const Enclosure& a, const Enclosure& b);

/// A closed interval [lo, hi] with enclosed endpoints.
struct Band {
    Enclosure lo, hi;
    friend bool operator==(const Band&, const Band&) = default;
};

struct Spectrum {
    std::vector<Band> bands;
    std::vector<Enclosure> points;
    Rational tol;

    nlohmann::json to_json() const;
    static Spectrum from_json(const nlohmann::json& j);
    friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

// ------------------------------------------------------------ trace polynomials

/// trace of A(w_q)...A(w_1), A(a) = [[E - V a, -1], [1, 0]]
Polynomial trace_poly(const Word& w, const Rational& V);
/// trace polynomial of the last word of c; the sentinel [0] gives the constant 2
Polynomial trace_poly_cf(const ContinuedFraction& c, const Rational& V);

using BiMatrix = std::array<BiPolynomial, 4>;  // row-major
/// transfer product with V kept symbolic
BiMatrix transfer_matrix_symbolic(const Word& w);
BiPolynomial trace_poly_symbolic(const Word& w);
BiPolynomial trace_poly_symbolic_cf(const ContinuedFraction& c);

/// exact t(E) for the word, via integer transfer products
Rational trace_value(const Word& w, const Rational& V, const Rational& E);

// ------------------------------------------------------------ spectra

Spectrum spectrum_of_word(const Word& w, const Rational& V, const Rational& tol);
Spectrum spectrum_periodic(const Rational& r, const Rational& V, const Rational& tol);
/// |t(E)| <= 2, exactly
bool membership(const Rational& E, const Rational& r, const Rational& V);

struct BandClassification {
    Rational r_k;
    std::vector<Band> typeA, typeB;
    std::vector<size_t> typeB_index;  // positions among the bands of sigma_{r_k}
    bool k0_reached = false;
};

/// Splits the bands of sigma_{r_k}, r_k = cf_eval(c ++ [k]), against sigma_{cf_eval(c)}.
BandClassification band_classify(const ContinuedFraction& c, long k, const Rational& V, const Rational& tol);
/// Same with c the short continued fraction of r.
BandClassification band_classify(const Rational& r, long k, const Rational& V, const Rational& tol);

/// approximant continued fraction whose r_k tends to r from the given side
ContinuedFraction defect_approximant_cf(const Rational& r, Side side);

struct DefectResult {
    Spectrum spectrum;
    long k = 0;                     // approximant index used
    ContinuedFraction approximant;  // c with r_k = cf_eval(c ++ [k])
};

DefectResult defect_spectrum_detailed(const Rational& r, Side side, const Rational& V, const Rational& tol,
                                      long kcap = 64);
Spectrum defect_spectrum(const Rational& r, Side side, const Rational& V, const Rational& tol, long kcap = 64);

// ------------------------------------------------------------ floating oracle

/// Eigenvalues of the N x N truncation centred at the origin (uncertified).
std::vector<double> finite_section_eigs(const Configuration& c, double V, long N);

struct FiniteSectionMode {
    double energy;         // cluster mean
    long multiplicity;     // eigenvalues closer than 1e-7 form one cluster
    double centre_weight;  // eigenspace mass on the middle half of the window
};

/// Eigenvalue clusters with energy in [lo, hi], with how much of each eigenspace sits near the origin.
/// Clusters inside one of the skip intervals are left out.
std::vector<FiniteSectionMode> finite_section_modes(const Configuration& c, double V, long N, double lo, double hi,
                                                    const std::vector<std::pair<double, double>>& skip = {});

// ------------------------------------------------------------ set metrics

/// Hausdorff distance, enclosed.
Enclosure hausdorff(const Spectrum& a, const Spectrum& b);
/// Lebesgue measure (points contribute nothing), enclosed.
Enclosure lebesgue(const Spectrum& s);

/// Certified intersection of two sorted band lists; PrecisionError if an endpoint order is undecided.
std::vector<Band> intersect_bands(const std::vector<Band>& a, const std::vector<Band>& b);
/// Certified union (merged components) of two sorted band lists.
std::vector<Band> union_bands(const std::vector<Band>& a, const std::vector<Band>& b);
/// Whether each band of inner is certified to lie in a single band of outer.
bool bands_contained(const std::vector<Band>& inner, const std::vector<Band>& outer);

}  // namespace kohmoto
