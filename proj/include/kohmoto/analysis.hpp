#pragma once

#include "kohmoto/spectra.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kohmoto {

/// Certified spectrum of a rational point or a one-sided limit.
Spectrum spectrum_of_point(const FareyPoint& x, const Rational& V, const Rational& tol);

// ------------------------------------------------------------ Lipschitz sweep

struct LipschitzRow {
    FareyPoint x, y;
    Rational d_F;
    Enclosure d_H;
    Enclosure ratio;                   // d_H / d_F
    std::optional<Enclosure> q_times_dH;  // rows with 0 < |alpha - p/q| < 1/q^2
};

struct LipschitzResult {
    Enclosure max_ratio;
    std::vector<LipschitzRow> rows;
};

LipschitzResult lipschitz_sweep(const std::vector<std::pair<FareyPoint, FareyPoint>>& pairs, const Rational& V,
                                const Rational& tol);

// ------------------------------------------------------------ optimality

struct OptimalityRow {
    long k = 0;
    Rational r_k;
    Rational d_F;
    std::optional<Enclosure> D_k;  // empty: sigma_r and sigma_{r_k} do not meet (D_k infinite)
    Enclosure d_H;                 // d_H(sigma_{r_k}, sigma of the side limit)
    Enclosure overlap;             // measure of sigma_r cap sigma_{r_k}
    bool step2 = false;            // D_k <= d_H
    bool step3 = false;            // mu(cap) <= mu(sigma_r) <= mu(cap) + 2q(k+1) D_k
    bool step4 = true;             // max{(k+1) D_k, (k+2) D_{k+1}} >= mu/(4q); true for the last row
};

struct OptimalityReport {
    Rational r, V;
    Side side = Side::Plus;
    long q = 0;
    ContinuedFraction approximant;
    Enclosure mu;  // Lebesgue measure of sigma_r
    std::vector<OptimalityRow> rows;
    long l0 = 0;  // first k from which the D_k <= d_H comparison holds throughout
    std::vector<long> subsequence;
    Rational C1, C2_observed;
    bool step3_all = false, step4_all = false, sandwich_all = false;

    nlohmann::json to_json() const;
};

OptimalityReport optimality_certificate(const Rational& r, Side side, const Rational& V, long kmax, const Rational& tol);

// ------------------------------------------------------------ measures

struct MeasureRow {
    long k = 0;
    Rational r_k;
    Enclosure overlap;                // mu(sigma_r cap sigma_{r_k})
    std::optional<bool> pair_sum_ok;  // V > 4: overlap_k + overlap_{k+1} <= mu(sigma_r)
    bool below_half = false;          // certified overlap <= mu(sigma_r)/2
};

struct MeasureTable {
    Rational r, V;
    Enclosure mu;
    std::vector<MeasureRow> rows;

    nlohmann::json to_json() const;
};

MeasureTable measure_experiments(const Rational& r, const Rational& V, long kmax,
                                 const Rational& tol = Rational(1, 1000000000));

// ------------------------------------------------------------ butterfly

enum class Backend { Certified, Fast };

struct ButterflyRow {
    long q = 0, p = 0;
    std::vector<std::array<std::string, 4>> bands;  // lo_lo, lo_hi, hi_lo, hi_hi
    std::vector<std::array<std::string, 2>> defect_minus, defect_plus;
    std::vector<std::pair<double, double>> band_values;  // for plotting
    std::vector<double> minus_values, plus_values;
    std::string tol;
    std::vector<std::string> errors;  // per-row failures, not fatal
};

struct ButterflyDataset {
    Rational V;
    long Q = 0;
    Backend backend = Backend::Certified;
    bool include_defects = false;
    std::vector<ButterflyRow> rows;  // ordered by (q, p)

    std::string csv() const;
    nlohmann::json to_json() const;
    std::string svg() const;
};

/// threads = 0 uses the hardware concurrency; the result does not depend on it.
ButterflyDataset butterfly(long Q, const Rational& V, Backend backend, bool include_defects,
                           const Rational& tol = Rational(1, 1000000), unsigned threads = 1);

}  // namespace kohmoto
