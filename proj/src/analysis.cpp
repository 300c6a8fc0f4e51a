#include "kohmoto/analysis.hpp"

#include "kohmoto/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <atomic>
#include <thread>

namespace kohmoto {

Spectrum spectrum_of_point(const FareyPoint& x, const Rational& V, const Rational& tol) {
    switch (x.kind()) {
        case FareyPoint::Kind::Exact:
            return spectrum_periodic(x.base(), V, tol);
        case FareyPoint::Kind::Plus:
            return defect_spectrum(x.base(), Side::Plus, V, tol);
        case FareyPoint::Kind::Minus:
            return defect_spectrum(x.base(), Side::Minus, V, tol);
        default:
            throw PreconditionError("no computable spectrum for the irrational point " + x.str());
    }
}

namespace {

Enclosure scale(const Enclosure& e, const Rational& s) {
    if (s.sign() >= 0) return {e.lo * s, e.hi * s};
    return {e.hi * s, e.lo * s};
}

Spectrum bands_only(std::vector<Band> b, const Rational& tol) {
    Spectrum s;
    s.bands = std::move(b);
    s.tol = tol;
    return s;
}

// sigma_a cap sigma_b, refining both when an endpoint order cannot be certified
std::vector<Band> certified_cap(const Word& a, const Word& b, const Rational& V, const Rational& tol) {
    Rational t = tol;
    for (int attempt = 0;; ++attempt) {
        try {
            return intersect_bands(spectrum_of_word(a, V, t).bands, spectrum_of_word(b, V, t).bands);
        } catch (const PrecisionError&) {
            if (attempt == 4) throw;
            t = t / Rational(1L << 20);
        }
    }
}

}  // namespace

// ---------------------------------------------------------------- Lipschitz

LipschitzResult lipschitz_sweep(const std::vector<std::pair<FareyPoint, FareyPoint>>& pairs, const Rational& V,
                                const Rational& tol) {
    LipschitzResult res;
    bool first = true;
    for (auto& [x, y] : pairs) {
        if (x == y) throw PreconditionError("Lipschitz ratio of coincident points " + x.str());
        LipschitzRow row{x, y, farey_distance(x, y), {}, {}, std::nullopt};
        row.d_H = hausdorff(spectrum_of_point(x, V, tol), spectrum_of_point(y, V, tol));
        row.ratio = scale(row.d_H, Rational(1) / row.d_F);
        // Dirichlet regime: one exact p/q, the other within 1/q^2 of it
        for (int swap = 0; swap < 2; ++swap) {
            const FareyPoint& e = swap ? y : x;
            const FareyPoint& o = swap ? x : y;
            if (e.kind() != FareyPoint::Kind::Exact || !o.is_rational_based()) continue;
            Rational gap = abs(o.base() - e.base());
            Rational q(e.base().den(), mpz_class(1));
            if (gap.sign() > 0 && gap < Rational(1) / (q * q)) row.q_times_dH = scale(row.d_H, q);
        }
        if (first) {
            res.max_ratio = row.ratio;
            first = false;
        } else {
            res.max_ratio = {max(res.max_ratio.lo, row.ratio.lo), max(res.max_ratio.hi, row.ratio.hi)};
        }
        res.rows.push_back(std::move(row));
    }
    return res;
}

// ---------------------------------------------------------------- optimality

OptimalityReport optimality_certificate(const Rational& r, Side side, const Rational& V, long kmax,
                                        const Rational& tol) {
    if (!(V > Rational(4))) throw UnsupportedRegime("optimality certificate requires V > 4, got V = " + V.str());
    if (kmax < 4) throw PreconditionError("optimality certificate needs kmax >= 4");
    if (tol.sign() <= 0) throw PreconditionError("tolerance must be positive");
    OptimalityReport rep;
    rep.r = r;
    rep.V = V;
    rep.side = side;
    rep.q = r.den().get_si();
    rep.approximant = defect_approximant_cf(r, side);
    Word wr = period_word(r);
    Spectrum sr = spectrum_periodic(r, V, tol);
    rep.mu = lebesgue(sr);
    Spectrum limit = defect_spectrum(r, side, V, tol);
    FareyPoint xlim = side_point(r, side);
    const Rational q(rep.q), quarter = rep.mu.lo / (Rational(4) * q);

    for (long k = 1; k <= kmax; ++k) {
        OptimalityRow row;
        row.k = k;
        ContinuedFraction ck = rep.approximant.append(k);
        row.r_k = cf_eval(ck);
        row.d_F = farey_distance(FareyPoint::exact(row.r_k), xlim);
        Word wk = cf_word(ck);
        auto cap = certified_cap(wr, wk, V, tol);
        row.overlap = lebesgue(bands_only(cap, tol));
        if (!cap.empty()) row.D_k = hausdorff(bands_only(cap, tol), sr);
        row.d_H = hausdorff(spectrum_of_word(wk, V, tol), limit);
        row.step2 = row.D_k && row.D_k->lo <= row.d_H.hi;
        Rational slack = row.D_k ? Rational(2) * q * Rational(k + 1) * row.D_k->hi : Rational(0);
        row.step3 = row.overlap.lo <= rep.mu.hi && (!row.D_k || rep.mu.lo <= row.overlap.hi + slack);
        rep.rows.push_back(std::move(row));
    }
    auto weighted_hi = [&](const OptimalityRow& row) -> std::optional<Rational> {
        if (!row.D_k) return std::nullopt;  // infinite
        return Rational(row.k + 1) * row.D_k->hi;
    };
    for (size_t i = 0; i + 1 < rep.rows.size(); ++i) {
        auto a = weighted_hi(rep.rows[i]), b = weighted_hi(rep.rows[i + 1]);
        rep.rows[i].step4 = !a || !b || max(*a, *b) >= quarter;
    }
    rep.l0 = kmax + 1;
    for (long i = kmax - 1; i >= 0 && rep.rows[i].step2; --i) rep.l0 = rep.rows[i].k;

    rep.C1 = rep.mu.lo / Rational(8);
    rep.step3_all = rep.step4_all = true;
    for (auto& row : rep.rows) {
        rep.step3_all = rep.step3_all && row.step3;
        rep.step4_all = rep.step4_all && row.step4;
        if (row.k < rep.l0) continue;
        auto w = weighted_hi(row);
        if (w && *w >= quarter) rep.subsequence.push_back(row.k);
    }
    rep.C2_observed = Rational(0);
    for (long k : rep.subsequence) {
        auto& row = rep.rows[k - 1];
        rep.C2_observed = max(rep.C2_observed, row.d_H.hi / row.d_F);
    }
    rep.sandwich_all = true;
    for (long k : rep.subsequence) {
        auto& row = rep.rows[k - 1];
        bool ok = rep.C1 * row.d_F <= row.D_k->hi && row.D_k->lo <= row.d_H.hi &&
                  row.d_H.lo <= rep.C2_observed * row.d_F;
        rep.sandwich_all = rep.sandwich_all && ok;
    }
    return rep;
}

namespace {

nlohmann::json enc_json(const Enclosure& e) { return {e.lo.str(), e.hi.str()}; }

}  // namespace

nlohmann::json OptimalityReport::to_json() const {
    nlohmann::json j;
    j["r"] = r.str();
    j["V"] = V.str();
    j["side"] = side_name(side);
    j["q"] = q;
    j["approximant"] = approximant.str();
    j["mu"] = enc_json(mu);
    j["C1"] = C1.str();
    j["C2_observed"] = C2_observed.str();
    j["l0"] = l0;
    j["subsequence"] = subsequence;
    j["step3_all"] = step3_all;
    j["step4_all"] = step4_all;
    j["sandwich_all"] = sandwich_all;
    j["rows"] = nlohmann::json::array();
    for (auto& row : rows) {
        nlohmann::json x;
        x["k"] = row.k;
        x["r_k"] = row.r_k.str();
        x["d_F"] = row.d_F.str();
        x["D_k"] = row.D_k ? enc_json(*row.D_k) : nlohmann::json("inf");
        x["d_H"] = enc_json(row.d_H);
        x["overlap"] = enc_json(row.overlap);
        x["step2"] = row.step2;
        x["step3"] = row.step3;
        x["step4"] = row.step4;
        j["rows"].push_back(x);
    }
    return j;
}

// ---------------------------------------------------------------- measures

MeasureTable measure_experiments(const Rational& r, const Rational& V, long kmax, const Rational& tol) {
    if (V.is_zero()) throw PreconditionError("measure experiments require V != 0");
    MeasureTable t;
    t.r = r;
    t.V = V;
    Word wr = period_word(r);
    t.mu = lebesgue(spectrum_periodic(r, V, tol));
    if (kmax <= 0) return t;
    ContinuedFraction c = cf_forms(r).first;
    std::vector<Enclosure> overlaps;
    std::vector<Rational> rks;
    long last = V > Rational(4) ? kmax + 1 : kmax;
    for (long k = 1; k <= last; ++k) {
        ContinuedFraction ck = c.append(k);
        rks.push_back(cf_eval(ck));
        overlaps.push_back(lebesgue(bands_only(certified_cap(wr, cf_word(ck), V, tol), tol)));
    }
    for (long k = 1; k <= kmax; ++k) {
        MeasureRow row;
        row.k = k;
        row.r_k = rks[k - 1];
        row.overlap = overlaps[k - 1];
        if (V > Rational(4)) row.pair_sum_ok = overlaps[k - 1].lo + overlaps[k].lo <= t.mu.hi;
        row.below_half = row.overlap.hi <= t.mu.lo / Rational(2);
        t.rows.push_back(row);
    }
    return t;
}

nlohmann::json MeasureTable::to_json() const {
    nlohmann::json j;
    j["r"] = r.str();
    j["V"] = V.str();
    j["mu"] = enc_json(mu);
    j["rows"] = nlohmann::json::array();
    for (auto& row : rows) {
        nlohmann::json x;
        x["k"] = row.k;
        x["r_k"] = row.r_k.str();
        x["overlap"] = enc_json(row.overlap);
        x["pair_sum_ok"] = row.pair_sum_ok ? nlohmann::json(*row.pair_sum_ok) : nlohmann::json(nullptr);
        x["below_half"] = row.below_half;
        j["rows"].push_back(x);
    }
    return j;
}

// ---------------------------------------------------------------- butterfly

namespace {

const double kSlop = std::ldexp(1.0, -40);

std::string approx(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "~%.12f", x);
    return buf;
}

std::vector<double> bloch(const Word& w, double V, int s) {
    const long q = static_cast<long>(w.size());
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(q, q);
    for (long i = 0; i < q; ++i) {
        H(i, i) = w[i] == '1' ? V : 0.0;
        if (q == 1) {
            H(0, 0) += 2.0 * s;
            continue;
        }
        long j = (i + 1) % q;
        double h = i + 1 == q ? s : 1.0;
        H(i, j) += h;
        H(j, i) += h;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
    return {es.eigenvalues().data(), es.eigenvalues().data() + q};
}

void fast_row(ButterflyRow& row, const Rational& r, double V, bool defects) {
    Word w = period_word(r);
    auto e = bloch(w, V, 1), f = bloch(w, V, -1);
    e.insert(e.end(), f.begin(), f.end());
    std::sort(e.begin(), e.end());
    for (size_t i = 0; i + 1 < e.size(); i += 2) {
        double lo = e[i] - kSlop, hi = e[i + 1] + kSlop;
        row.band_values.push_back({lo, hi});
        row.bands.push_back({approx(lo), approx(lo), approx(hi), approx(hi)});
    }
    row.tol = "~2^-40";
    if (!defects) return;
    for (Side side : {Side::Minus, Side::Plus}) {
        if ((r.is_zero() && side == Side::Minus) || (r == Rational(1) && side == Side::Plus)) continue;
        Configuration cfg = defect_config(r, side);
        long N = 40 * static_cast<long>(w.size()) + 201;
        std::vector<std::pair<double, double>> skip;
        for (auto& [lo, hi] : row.band_values) skip.push_back({lo - 1e-9, hi + 1e-9});
        auto modes = finite_section_modes(cfg, V, N, -1e300, 1e300, skip);
        auto& vals = side == Side::Minus ? row.minus_values : row.plus_values;
        auto& out = side == Side::Minus ? row.defect_minus : row.defect_plus;
        for (auto& m : modes) {
            if (m.centre_weight < 0.5) continue;
            vals.push_back(m.energy);
            out.push_back({approx(m.energy - kSlop), approx(m.energy + kSlop)});
        }
    }
}

void certified_row(ButterflyRow& row, const Rational& r, const Rational& V, const Rational& tol, bool defects) {
    row.tol = tol.str();
    try {
        Spectrum s = spectrum_periodic(r, V, tol);
        for (auto& b : s.bands) {
            row.bands.push_back({b.lo.lo.str(), b.lo.hi.str(), b.hi.lo.str(), b.hi.hi.str()});
            row.band_values.push_back({b.lo.mid().to_double(), b.hi.mid().to_double()});
        }
    } catch (const std::exception& ex) {
        row.errors.push_back(std::string("bands: ") + ex.what());
    }
    if (!defects) return;
    for (Side side : {Side::Minus, Side::Plus}) {
        if ((r.is_zero() && side == Side::Minus) || (r == Rational(1) && side == Side::Plus)) continue;
        try {
            Spectrum s = defect_spectrum(r, side, V, tol);
            auto& vals = side == Side::Minus ? row.minus_values : row.plus_values;
            auto& out = side == Side::Minus ? row.defect_minus : row.defect_plus;
            for (auto& p : s.points) {
                out.push_back({p.lo.str(), p.hi.str()});
                vals.push_back(p.mid().to_double());
            }
        } catch (const std::exception& ex) {
            row.errors.push_back("defect_" + side_name(side) + ": " + ex.what());
        }
    }
}

}  // namespace

ButterflyDataset butterfly(long Q, const Rational& V, Backend backend, bool include_defects, const Rational& tol,
                           unsigned threads) {
    if (Q < 1) throw PreconditionError("butterfly needs Q >= 1");
    if (backend == Backend::Certified && tol.sign() <= 0) throw PreconditionError("tolerance must be positive");
    ButterflyDataset ds;
    ds.V = V;
    ds.Q = Q;
    ds.backend = backend;
    ds.include_defects = include_defects;
    for (long q = 1; q <= Q; ++q)
        for (long p = 0; p <= q; ++p)
            if (std::gcd(p, q) == 1) {
                ButterflyRow row;
                row.q = q;
                row.p = p;
                ds.rows.push_back(row);
            }
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<size_t> next{0};
    double Vd = V.to_double();
    auto work = [&] {
        for (size_t i; (i = next.fetch_add(1)) < ds.rows.size();) {
            ButterflyRow& row = ds.rows[i];
            Rational r(row.p, row.q);
            if (backend == Backend::Fast)
                fast_row(row, r, Vd, include_defects);
            else
                certified_row(row, r, V, tol, include_defects);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return ds;
}

std::string ButterflyDataset::csv() const {
    std::ostringstream os;
    os << "q,p,kind,lo,hi\n";
    for (auto& row : rows) {
        for (auto& b : row.bands) os << row.q << ',' << row.p << ",band," << b[0] << ',' << b[3] << '\n';
        for (auto& d : row.defect_minus) os << row.q << ',' << row.p << ",defect_minus," << d[0] << ',' << d[1] << '\n';
        for (auto& d : row.defect_plus) os << row.q << ',' << row.p << ",defect_plus," << d[0] << ',' << d[1] << '\n';
    }
    return os.str();
}

nlohmann::json ButterflyDataset::to_json() const {
    nlohmann::json j;
    j["V"] = V.str();
    j["Q"] = Q;
    j["backend"] = backend == Backend::Fast ? "fast-uncertified" : "certified";
    j["rows"] = nlohmann::json::array();
    for (auto& row : rows) {
        nlohmann::json x;
        x["r"] = Rational(row.p, row.q).str();
        x["bands"] = row.bands;
        x["points"] = nlohmann::json::object();
        if (include_defects) {
            x["points"]["minus"] = row.defect_minus;
            x["points"]["plus"] = row.defect_plus;
        }
        x["tol"] = row.tol;
        if (!row.errors.empty()) x["errors"] = row.errors;
        j["rows"].push_back(x);
    }
    return j;
}

std::string ButterflyDataset::svg() const {
    const double W = 800, H = 800, m = 40;
    double v = V.to_double();
    double e0 = std::floor(std::min(0.0, v)) - 3, e1 = std::ceil(std::max(0.0, v)) + 3;
    auto X = [&](double e) { return m + (e - e0) / (e1 - e0) * (W - 2 * m); };
    auto Y = [&](double r) { return H - m - r * (H - 2 * m); };
    char buf[256];
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
    os << "<rect width=\"800\" height=\"800\" fill=\"#ffffff\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#888888\" stroke-width=\"1\"/>\n", m,
                  H - m, W - m, H - m);
    os << buf;
    os << "<g stroke=\"#1f3a93\" stroke-width=\"1.5\" stroke-linecap=\"butt\">\n";
    for (auto& row : rows) {
        double y = Y(static_cast<double>(row.p) / static_cast<double>(row.q));
        for (auto& [lo, hi] : row.band_values) {
            std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\"/>\n", X(lo), y,
                          std::max(X(hi), X(lo) + 0.5), y);
            os << buf;
        }
    }
    os << "</g>\n";
    auto dots = [&](const char* colour, bool minus, double dy) {
        os << "<g fill=\"" << colour << "\">\n";
        for (auto& row : rows) {
            double y = Y(static_cast<double>(row.p) / static_cast<double>(row.q)) + dy;
            for (double e : minus ? row.minus_values : row.plus_values) {
                std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.6\"/>\n", X(e), y);
                os << buf;
            }
        }
        os << "</g>\n";
    };
    if (include_defects) {
        dots("#c0392b", true, 2.0);
        dots("#27ae60", false, -2.0);
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace kohmoto
