#include "kohmoto/spectra.hpp"

#include "kohmoto/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>

namespace kohmoto {

Enclosure::Enclosure(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi < lo) throw PreconditionError("enclosure with lo > hi: [" + lo.str() + ", " + hi.str() + "]");
}

std::string Enclosure::str() const { return "[" + lo.str() + ", " + hi.str() + "]"; }

bool certainly_below(const Enclosure& a, const Enclosure& b) { return a.hi < b.lo; }

nlohmann::json Spectrum::to_json() const {
    nlohmann::json j;
    j["bands"] = nlohmann::json::array();
    for (auto& b : bands) j["bands"].push_back({b.lo.lo.str(), b.lo.hi.str(), b.hi.lo.str(), b.hi.hi.str()});
    j["points"] = nlohmann::json::array();
    for (auto& p : points) j["points"].push_back({p.lo.str(), p.hi.str()});
    j["tol"] = tol.str();
    return j;
}

Spectrum Spectrum::from_json(const nlohmann::json& j) {
    Spectrum s;
    for (auto& b : j.at("bands")) {
        auto g = [&](int i) { return Rational::parse(b.at(i).get<std::string>()); };
        s.bands.push_back({Enclosure(g(0), g(1)), Enclosure(g(2), g(3))});
    }
    for (auto& p : j.at("points"))
        s.points.emplace_back(Rational::parse(p.at(0).get<std::string>()), Rational::parse(p.at(1).get<std::string>()));
    s.tol = Rational::parse(j.at("tol").get<std::string>());
    return s;
}

// ---------------------------------------------------------------- traces

namespace {

void require_word(const Word& w) {
    check_word(w);
    if (w.empty()) throw PreconditionError("trace of the empty word");
}

}  // namespace

Polynomial trace_poly(const Word& w, const Rational& V) {
    require_word(w);
    // M <- A(x) M with A(x) = [[E - V x, -1], [1, 0]]
    Polynomial a = Polynomial::constant(Rational(1)), b, c, d = Polynomial::constant(Rational(1));
    Polynomial e = Polynomial::x();
    Polynomial ev = e - Polynomial::constant(V);
    for (char ch : w) {
        const Polynomial& f = ch == '1' ? ev : e;
        Polynomial na = f * a - c, nb = f * b - d;
        c = std::move(a);
        d = std::move(b);
        a = std::move(na);
        b = std::move(nb);
    }
    return a + d;
}

Polynomial trace_poly_cf(const ContinuedFraction& c, const Rational& V) {
    if (c.size() == 1) return Polynomial::constant(Rational(2));
    return trace_poly(cf_word(c), V);
}

BiMatrix transfer_matrix_symbolic(const Word& w) {
    require_word(w);
    BiPolynomial a = BiPolynomial::constant(1), b, c, d = BiPolynomial::constant(1);
    BiPolynomial e = BiPolynomial::E(), ev = BiPolynomial::E() - BiPolynomial::V();
    for (char ch : w) {
        const BiPolynomial& f = ch == '1' ? ev : e;
        BiPolynomial na = f * a - c, nb = f * b - d;
        c = std::move(a);
        d = std::move(b);
        a = std::move(na);
        b = std::move(nb);
    }
    return {a, b, c, d};
}

BiPolynomial trace_poly_symbolic(const Word& w) {
    auto m = transfer_matrix_symbolic(w);
    return m[0] + m[3];
}

BiPolynomial trace_poly_symbolic_cf(const ContinuedFraction& c) {
    if (c.size() == 1) return BiPolynomial::constant(2);
    return trace_poly_symbolic(cf_word(c));
}

namespace {

// Exact integer evaluation at E = a/b for a fixed word and coupling V = vn/vd.
struct IntegerTransfer {
    std::vector<char> letters;
    mpz_class vn, vd;

    IntegerTransfer(const Word& w, const Rational& V) : vn(V.num()), vd(V.den()) {
        for (char ch : w) letters.push_back(ch == '1');
    }

    // g^q t(E) and g^q, with g = vd b
    std::pair<mpz_class, mpz_class> scaled_trace(const Rational& E) const {
        mpz_class g = vd * E.den(), vb = vn * E.den(), av = E.num() * vd;
        mpz_class m00 = 1, m01 = 0, m10 = 0, m11 = 1, t0, t1, c;
        mpz_class gq = 1;
        for (char x : letters) {
            c = x ? mpz_class(vb - av) : mpz_class(-av);
            // [[-c, -g], [g, 0]] * M
            t0 = -c * m00 - g * m10;
            t1 = -c * m01 - g * m11;
            m10 = g * m00;
            m11 = g * m01;
            m00 = std::move(t0);
            m01 = std::move(t1);
            gq *= g;
        }
        return {m00 + m11, gq};
    }

    // sign of t(E) - 2s
    int sign_f(const Rational& E, int s) const {
        auto [T, gq] = scaled_trace(E);
        mpz_class d = T - 2 * s * gq;
        return sgn(d);
    }

    struct Count {
        long below = 0;  // eigenvalues of H_s strictly below E
        bool root = false;
    };

    // Inertia of H_s - E through leading principal minors; nullopt if an intermediate minor vanishes.
    std::optional<Count> count(const Rational& E, int s) const {
        const size_t q = letters.size();
        mpz_class g = vd * E.den(), vb = vn * E.den(), av = E.num() * vd, g2 = g * g;
        mpz_class d0 = 1, d1, c;
        Count out;
        int prev = 1;
        for (size_t i = 0; i + 1 < q; ++i) {
            c = letters[i] ? mpz_class(vb - av) : mpz_class(-av);
            if (i == 0) {
                d1 = c;
            } else {
                mpz_class d2 = c * d1 - g2 * d0;
                d0 = std::move(d1);
                d1 = std::move(d2);
            }
            int sg = sgn(d1);
            if (sg == 0) return std::nullopt;
            if (sg != prev) ++out.below;
            prev = sg;
        }
        int last = sign_f(E, s) * ((q % 2) ? -1 : 1);
        if (last == 0)
            out.root = true;
        else if (last != prev)
            ++out.below;
        return out;
    }
};

// Isolated root of t - 2s with a deterministic bisection history.
struct Root {
    Rational A, B;  // open isolating interval, f(A) and f(B) nonzero
    int sA = 0;
    std::vector<char> path;  // 1 = root in the upper half
    std::optional<Rational> exact;
    size_t exact_level = 0;
};

Rational pow2(size_t n) {
    mpz_class p = 1;
    p <<= static_cast<mp_bitcnt_t>(n);
    return Rational(p, mpz_class(1));
}

class EdgeSolver {
public:
    EdgeSolver(const Word& w, const Rational& V) : tr_(w, V), q_(w.size()) {
        require_word(w);
        Polynomial t = trace_poly(w, V);
        for (int k = 0; k < 2; ++k) {
            int s = k == 0 ? 1 : -1;
            if (!is_squarefree(t - Polynomial::constant(Rational(2 * s))))
                throw DegeneracyError("repeated band edge for word " + w + " at V = " + V.str() +
                                      " (touching bands)");
        }
        lo_ = Rational(mpz_class(floor_of(min(Rational(0), V)) - 3), mpz_class(1));
        hi_ = Rational(mpz_class(ceil_of(max(Rational(0), V)) + 3), mpz_class(1));
        isolate(0);
        isolate(1);
    }

    size_t q() const { return q_; }

    // i-th band with edge enclosures of width <= tol
    Band band(size_t i, const Rational& tol) {
        std::lock_guard lk(mu_);
        return band_locked(i, tol);
    }

    Spectrum spectrum(const Rational& tol) {
        std::lock_guard lk(mu_);
        Spectrum s;
        s.tol = tol;
        std::vector<Rational> tl(q_, tol), th(q_, tol);
        for (size_t i = 0; i < q_; ++i) s.bands.push_back(band_locked(i, tol));
        for (size_t i = 0; i + 1 < q_; ++i) {
            // adjacent gap edges are distinct roots of one polynomial, so this terminates
            while (!certainly_below(s.bands[i].hi, s.bands[i + 1].lo)) {
                th[i] = th[i] / Rational(2);
                tl[i + 1] = tl[i + 1] / Rational(2);
                s.bands[i].hi = edge(i, true, th[i]);
                s.bands[i + 1].lo = edge(i + 1, false, tl[i + 1]);
            }
        }
        return s;
    }

private:
    static mpz_class floor_of(const Rational& x) {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
        return f;
    }
    static mpz_class ceil_of(const Rational& x) {
        mpz_class f;
        mpz_cdiv_q(f.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
        return f;
    }

    struct Pt {
        Rational x;
        IntegerTransfer::Count c;
    };

    Pt probe(const Rational& a, const Rational& b, int s) const {
        static const int tries[] = {16, 15, 17, 13, 19, 11, 21, 9, 23, 7, 25};
        for (int j : tries) {
            Rational m = a + (b - a) * Rational(j, 32);
            if (auto c = tr_.count(m, s)) return {m, *c};
        }
        for (long j = 1;; ++j) {  // pathological: scan a finer grid
            Rational m = a + (b - a) * Rational(j, 1L << 20);
            if (auto c = tr_.count(m, s)) return {m, *c};
        }
    }

    void isolate(int k) {
        int s = k == 0 ? 1 : -1;
        auto clo = tr_.count(lo_, s), chi = tr_.count(hi_, s);
        if (!clo || !chi || clo->below != 0 || clo->root || chi->below != static_cast<long>(q_) || chi->root)
            throw std::logic_error("eigenvalues outside the isolation box");
        std::vector<Root>& out = roots_[k];
        split({lo_, *clo}, {hi_, *chi}, s, out);
        if (out.size() != q_) throw std::logic_error("root isolation lost a root");
    }

    void split(const Pt& A, const Pt& B, int s, std::vector<Root>& out) const {
        long inside = B.c.below - A.c.below - (A.c.root ? 1 : 0);
        if (inside == 0) return;
        if (inside == 1) {
            out.push_back(make_root(A, B, s));
            return;
        }
        Pt M = probe(A.x, B.x, s);
        split(A, M, s, out);
        if (M.c.root) {
            Root r;
            r.A = r.B = M.x;
            r.exact = M.x;
            out.push_back(r);
        }
        split(M, B, s, out);
    }

    Root make_root(Pt A, Pt B, int s) const {
        // move endpoints off neighbouring roots
        while (A.c.root || B.c.root) {
            Pt M = probe(A.x, B.x, s);
            if (M.c.root) {
                Root r;
                r.A = r.B = M.x;
                r.exact = M.x;
                return r;
            }
            long left = M.c.below - A.c.below - (A.c.root ? 1 : 0);
            if (left == 1)
                B = M;
            else
                A = M;
        }
        Root r;
        r.A = A.x;
        r.B = B.x;
        r.sA = tr_.sign_f(A.x, s);
        // rational edges are multiples of 1/den(V): test the few candidates once the interval is short
        const mpz_class& b = tr_.vd;
        for (;;) {
            mpz_class k0, k1;
            mpz_class na = r.A.num() * b, nb = r.B.num() * b;
            mpz_fdiv_q(k0.get_mpz_t(), na.get_mpz_t(), r.A.den().get_mpz_t());
            mpz_fdiv_q(k1.get_mpz_t(), nb.get_mpz_t(), r.B.den().get_mpz_t());
            if (k1 - k0 <= 4) {
                for (mpz_class k = k0; k <= k1; ++k) {
                    Rational x(k, b);
                    if (r.A < x && x < r.B && tr_.sign_f(x, s) == 0) {
                        r.exact = x;
                        r.A = r.B = x;
                        return r;
                    }
                }
                return r;
            }
            Rational m = (r.A + r.B) / Rational(2);
            int sm = tr_.sign_f(m, s);
            if (sm == 0) {
                r.exact = m;
                r.A = r.B = m;
                return r;
            }
            (sm == r.sA ? r.A : r.B) = m;
        }
    }

    Enclosure root_at(int k, size_t i, const Rational& tol) {
        Root& r = roots_[k][i];
        if (r.exact && r.path.empty()) return Enclosure::point(*r.exact);
        Rational w = r.B - r.A;
        size_t level = 0;
        while (w > tol) {
            w = w / Rational(2);
            ++level;
        }
        int s = k == 0 ? 1 : -1;
        while (r.path.size() < level && !r.exact) {
            auto [a, b] = interval_at(r, r.path.size());
            Rational m = (a + b) / Rational(2);
            int sm = tr_.sign_f(m, s);
            if (sm == 0) {
                r.exact = m;
                r.exact_level = r.path.size() + 1;
                r.path.push_back(2);
            } else {
                r.path.push_back(sm == r.sA ? 1 : 0);
            }
        }
        if (r.exact && level >= r.exact_level) return Enclosure::point(*r.exact);
        auto [a, b] = interval_at(r, level);
        return {a, b};
    }

    static std::pair<Rational, Rational> interval_at(const Root& r, size_t level) {
        Rational a = r.A, b = r.B;
        for (size_t j = 0; j < level; ++j) {
            Rational m = (a + b) / Rational(2);
            if (r.path[j] == 1)
                a = m;
            else
                b = m;
        }
        return {a, b};
    }

    // band i counted from the bottom has increasing t iff q - 1 - i is even
    Enclosure edge(size_t i, bool upper, const Rational& tol) {
        bool increasing = (q_ - 1 - i) % 2 == 0;
        // increasing: lower edge at t = -2, upper edge at t = +2
        int k = (increasing != upper) ? 1 : 0;
        return root_at(k, i, tol);
    }

    Band band_locked(size_t i, const Rational& tol) {
        if (i >= q_) throw PreconditionError("band index out of range");
        Band b{edge(i, false, tol), edge(i, true, tol)};
        if (certainly_below(b.hi, b.lo)) throw std::logic_error("band edges out of order");
        return b;
    }

    IntegerTransfer tr_;
    size_t q_;
    Rational lo_, hi_;
    std::vector<Root> roots_[2];
    std::mutex mu_;
};

struct Caches {
    std::shared_mutex mu;
    std::map<std::pair<Word, std::string>, std::shared_ptr<EdgeSolver>> solvers;
    std::map<std::tuple<Word, std::string, std::string>, Spectrum> spectra;
};

Caches& caches() {
    static Caches c;
    return c;
}

std::shared_ptr<EdgeSolver> solver_for(const Word& w, const Rational& V) {
    auto& c = caches();
    auto key = std::make_pair(w, V.str());
    {
        std::shared_lock lk(c.mu);
        auto it = c.solvers.find(key);
        if (it != c.solvers.end()) return it->second;
    }
    auto s = std::make_shared<EdgeSolver>(w, V);
    std::unique_lock lk(c.mu);
    return c.solvers.emplace(key, s).first->second;
}

void require_tol(const Rational& tol) {
    if (tol.sign() <= 0) throw PreconditionError("tolerance must be positive");
}

}  // namespace

Rational trace_value(const Word& w, const Rational& V, const Rational& E) {
    require_word(w);
    auto [T, gq] = IntegerTransfer(w, V).scaled_trace(E);
    return Rational(T, gq);
}

Spectrum spectrum_of_word(const Word& w, const Rational& V, const Rational& tol) {
    require_tol(tol);
    require_word(w);
    auto& c = caches();
    auto key = std::make_tuple(w, V.str(), tol.str());
    {
        std::shared_lock lk(c.mu);
        auto it = c.spectra.find(key);
        if (it != c.spectra.end()) return it->second;
    }
    Spectrum s = solver_for(w, V)->spectrum(tol);
    std::unique_lock lk(c.mu);
    c.spectra[key] = s;
    return s;
}

namespace {

void require_unit(const Rational& r) {
    if (r < Rational(0) || r > Rational(1)) throw PreconditionError("r must lie in [0,1], got " + r.str());
}

}  // namespace

Spectrum spectrum_periodic(const Rational& r, const Rational& V, const Rational& tol) {
    require_unit(r);
    return spectrum_of_word(period_word(r), V, tol);
}

bool membership(const Rational& E, const Rational& r, const Rational& V) {
    require_unit(r);
    return abs(trace_value(period_word(r), V, E)) <= Rational(2);
}

// ---------------------------------------------------------------- classification

namespace {

enum class Verdict { Undecided, InSigma, NotInSigma };

struct BandVerdict {
    Verdict kind = Verdict::Undecided;
    bool disjoint = false;  // certified empty intersection with sigma_r
    bool meets = false;     // certified non-empty intersection with sigma_r
};

BandVerdict judge(const Band& I, const std::vector<Band>& J) {
    BandVerdict v;
    const Rational &x0 = I.lo.lo, &x1 = I.lo.hi, &y0 = I.hi.lo, &y1 = I.hi.hi;
    for (auto& b : J) {
        if (b.lo.hi <= x0 && y1 <= b.hi.lo) {
            v.kind = Verdict::InSigma;
            v.meets = true;
            return v;
        }
    }
    // certain gaps of sigma_r: (g0, g1) open
    std::vector<std::pair<std::optional<Rational>, std::optional<Rational>>> gaps;
    gaps.push_back({std::nullopt, J.front().lo.lo});
    for (size_t i = 0; i + 1 < J.size(); ++i) gaps.push_back({J[i].hi.hi, J[i + 1].lo.lo});
    gaps.push_back({J.back().hi.hi, std::nullopt});
    for (auto& [g0, g1] : gaps) {
        if (g0 && g1 && !(*g0 < *g1)) continue;
        bool above = !g0 || *g0 < x0;
        bool below = !g1 || y1 < *g1;
        if (above && below) {
            v.kind = Verdict::NotInSigma;
            v.disjoint = true;
            return v;
        }
        if (x1 <= y0) {  // certain interior [x1, y0]
            bool hit = (!g1 || x1 < *g1) && (!g0 || y0 > *g0);
            if (hit) v.kind = Verdict::NotInSigma;
        }
    }
    // certain overlap with a band of sigma_r
    for (auto& b : J) {
        if (x1 <= y0 && b.lo.hi <= b.hi.lo && x1 <= b.hi.lo && b.lo.hi <= y0) v.meets = true;
    }
    return v;
}

}  // namespace

BandClassification band_classify(const ContinuedFraction& c, long k, const Rational& V, const Rational& tol) {
    require_tol(tol);
    if (V.is_zero()) throw PreconditionError("band classification requires V != 0");
    if (k < 1) throw PreconditionError("k must be positive");
    if (c.size() < 2) throw PreconditionError("continued fraction of a rational required");
    Rational r = cf_eval(c);
    ContinuedFraction ck = c.append(k);
    BandClassification out;
    out.r_k = cf_eval(ck);
    auto Sr = solver_for(cf_word(c), V);
    auto Sk = solver_for(cf_word(ck), V);

    const Rational give_up = tol / pow2(120);
    std::vector<BandVerdict> verdicts(Sk->q());
    std::vector<Band> final_bands(Sk->q());
    for (size_t i = 0; i < Sk->q(); ++i) {
        Rational t = tol;
        BandVerdict v;
        Band I;
        for (;;) {
            std::vector<Band> J;
            for (size_t j = 0; j < Sr->q(); ++j) J.push_back(Sr->band(j, t));
            I = Sk->band(i, t);
            v = judge(I, J);
            bool done = v.kind == Verdict::InSigma || (v.kind == Verdict::NotInSigma && (v.disjoint || v.meets));
            if (done) break;
            if (t < give_up) {
                if (v.kind == Verdict::Undecided)
                    throw PrecisionError("cannot classify band " + std::to_string(i + 1) + " of sigma(" +
                                         out.r_k.str() + ") against sigma(" + r.str() + ")");
                break;  // not in sigma_r, disjointness undecided: report as not disjoint
            }
            t = t / pow2(16);
        }
        verdicts[i] = v;
        final_bands[i] = Sk->band(i, tol);
    }
    out.k0_reached = true;
    for (size_t i = 0; i < verdicts.size(); ++i) {
        if (verdicts[i].kind == Verdict::InSigma) {
            out.typeA.push_back(final_bands[i]);
        } else {
            out.typeB.push_back(final_bands[i]);
            out.typeB_index.push_back(i);
            if (!verdicts[i].disjoint) out.k0_reached = false;
        }
    }
    if (out.typeB.size() != Sr->q())
        throw std::logic_error("expected " + std::to_string(Sr->q()) + " bands outside sigma(" + r.str() + "), found " +
                               std::to_string(out.typeB.size()));
    return out;
}

BandClassification band_classify(const Rational& r, long k, const Rational& V, const Rational& tol) {
    require_unit(r);
    return band_classify(cf_forms(r).first, k, V, tol);
}

ContinuedFraction defect_approximant_cf(const Rational& r, Side side) {
    require_unit(r);
    if ((r.is_zero() && side == Side::Minus) || (r == Rational(1) && side == Side::Plus))
        throw PreconditionError("one-sided point " + side_point(r, side).str() + " lies outside [0,1]");
    auto [cs, cl] = cf_forms(r);
    bool even = cs.n() % 2 == 0;
    ContinuedFraction c = (even == (side == Side::Plus)) ? cs : cl;
    Rational r1 = cf_eval(c.append(1)), r2 = cf_eval(c.append(2));
    bool ok = side == Side::Plus ? (r < r1 && r < r2) : (r1 < r && r2 < r);
    if (!ok) throw std::logic_error("approximant does not approach " + side_point(r, side).str());
    return c;
}

DefectResult defect_spectrum_detailed(const Rational& r, Side side, const Rational& V, const Rational& tol,
                                      long kcap) {
    require_tol(tol);
    if (V.is_zero()) throw PreconditionError("defect spectrum requires V != 0");
    ContinuedFraction c = defect_approximant_cf(r, side);
    DefectResult res;
    res.approximant = c;
    res.spectrum = spectrum_periodic(r, V, tol);
    auto Sr = solver_for(cf_word(c), V);
    std::vector<Rational> widths;
    for (long k = 1; k <= kcap; ++k) {
        BandClassification cls = band_classify(c, k, V, tol);
        if (!cls.k0_reached) continue;
        auto Sk = solver_for(cf_word(c.append(k)), V);
        std::vector<Enclosure> pts;
        widths.clear();
        bool narrow = true;
        for (size_t i : cls.typeB_index) {
            Band b = Sk->band(i, tol / Rational(4));
            Enclosure h(b.lo.lo, b.hi.hi);
            widths.push_back(h.width());
            if (h.width() > tol) narrow = false;
            pts.push_back(h);
        }
        if (!narrow) continue;
        // interleaving with the bands of sigma_r, compared at a fine resolution
        bool points_first = c.n() % 2 != 0;
        Rational fine = tol;
        for (int attempt = 0;; ++attempt) {
            std::vector<Band> J;
            for (size_t j = 0; j < Sr->q(); ++j) J.push_back(Sr->band(j, fine));
            std::vector<Enclosure> cmp = pts;
            if (attempt > 0)
                for (size_t j = 0; j < cmp.size(); ++j) {
                    Band b = Sk->band(cls.typeB_index[j], fine / Rational(4));
                    cmp[j] = Enclosure(b.lo.lo, b.hi.hi);
                }
            bool decided = true, ok = true;
            for (size_t j = 0; j < cmp.size(); ++j) {
                const Enclosure& p = cmp[j];
                std::optional<Enclosure> below, above;
                if (points_first) {
                    if (j > 0) below = J[j - 1].hi;
                    above = J[j].lo;
                } else {
                    below = J[j].hi;
                    if (j + 1 < J.size()) above = J[j + 1].lo;
                }
                auto check = [&](const Enclosure& a, const Enclosure& b) {
                    if (certainly_below(a, b)) return;
                    if (certainly_below(b, a) || (a.is_point() && b.is_point()))
                        ok = false;
                    else
                        decided = false;
                };
                if (below) check(*below, p);
                if (above) check(p, *above);
            }
            if (!ok) throw std::logic_error("defect eigenvalues violate the parity interleaving for " + r.str());
            if (decided) break;
            if (attempt > 8) throw PrecisionError("cannot order defect eigenvalues against the bands");
            fine = fine / pow2(16);
        }
        res.spectrum.points = pts;
        res.k = k;
        return res;
    }
    std::ostringstream os;
    os << "defect eigenvalues of " << side_point(r, side).str() << " not certified up to k = " << kcap
       << "; last widths:";
    for (auto& w : widths) os << ' ' << w.to_double();
    throw PrecisionError(os.str());
}

Spectrum defect_spectrum(const Rational& r, Side side, const Rational& V, const Rational& tol, long kcap) {
    return defect_spectrum_detailed(r, side, V, tol, kcap).spectrum;
}

// ---------------------------------------------------------------- floating oracle

namespace {

void section(const Configuration& c, double V, long N, Eigen::VectorXd& diag, Eigen::VectorXd& off) {
    if (N < 3) throw PreconditionError("finite section needs N >= 3");
    long h = (N - 1) / 2;
    diag.resize(N);
    off = Eigen::VectorXd::Ones(N - 1);
    for (long i = 0; i < N; ++i) diag[i] = c.at(i - h) == '1' ? V : 0.0;
}

// one eigenvector of a symmetric tridiagonal matrix by inverse iteration
Eigen::VectorXd inverse_iteration(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double lambda,
                                  unsigned seed, const std::vector<Eigen::VectorXd>& against) {
    const long n = diag.size();
    double mu = lambda + 1e-12 * (1.0 + std::abs(lambda));
    Eigen::VectorXd x(n);
    unsigned long st = 0x9e3779b97f4a7c15UL + seed;
    for (long i = 0; i < n; ++i) {
        st = st * 6364136223846793005UL + 1442695040888963407UL;
        x[i] = static_cast<double>(st >> 11) / 9007199254740992.0 - 0.5;
    }
    x.normalize();
    for (int it = 0; it < 3; ++it) {
        // Gaussian elimination with partial pivoting on (T - mu) y = x; rows carry up to two superdiagonals
        std::vector<double> a(n), b(n), c(n, 0.0), d(n, 0.0);  // sub, main, sup1, sup2
        for (long i = 0; i < n; ++i) {
            b[i] = diag[i] - mu;
            if (i > 0) a[i] = off[i - 1];
            if (i + 1 < n) c[i] = off[i];
        }
        Eigen::VectorXd y = x;
        for (long i = 0; i + 1 < n; ++i) {
            if (std::abs(a[i + 1]) > std::abs(b[i])) {
                // swap rows i and i+1
                std::swap(b[i], a[i + 1]);
                std::swap(c[i], b[i + 1]);
                std::swap(d[i], c[i + 1]);
                std::swap(y[i], y[i + 1]);
            }
            if (b[i] == 0.0) b[i] = 1e-300;
            double m = a[i + 1] / b[i];
            b[i + 1] -= m * c[i];
            c[i + 1] -= m * d[i];
            y[i + 1] -= m * y[i];
        }
        if (b[n - 1] == 0.0) b[n - 1] = 1e-300;
        for (long i = n - 1; i >= 0; --i) {
            double s = y[i];
            if (i + 1 < n) s -= c[i] * y[i + 1];
            if (i + 2 < n) s -= d[i] * y[i + 2];
            y[i] = s / b[i];
        }
        for (auto& v : against) y -= v.dot(y) * v;
        x = y.normalized();
    }
    return x;
}

}  // namespace

std::vector<double> finite_section_eigs(const Configuration& c, double V, long N) {
    Eigen::VectorXd diag, off;
    section(c, V, N, diag, off);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + N);
    return out;
}

std::vector<FiniteSectionMode> finite_section_modes(const Configuration& c, double V, long N, double lo, double hi,
                                                    const std::vector<std::pair<double, double>>& skip) {
    Eigen::VectorXd diag, off;
    section(c, V, N, diag, off);
    auto eig = finite_section_eigs(c, V, N);
    std::vector<FiniteSectionMode> out;
    for (size_t i = 0; i < eig.size();) {
        size_t j = i + 1;
        while (j < eig.size() && eig[j] - eig[j - 1] < 1e-7 * std::max(1.0, std::abs(eig[j]))) ++j;
        double e = 0;
        for (size_t k = i; k < j; ++k) e += eig[k];
        e /= static_cast<double>(j - i);
        bool skipped = false;
        for (auto& [a, b] : skip) skipped = skipped || (e >= a && e <= b);
        if (e >= lo && e <= hi && !skipped) {
            // orthonormal basis of the cluster by inverse iteration with reorthogonalisation
            std::vector<Eigen::VectorXd> basis;
            double w = 0;
            for (size_t k = i; k < j; ++k) {
                Eigen::VectorXd x = inverse_iteration(diag, off, eig[k], static_cast<unsigned>(k - i), basis);
                basis.push_back(x);
                for (long n = N / 4; n < N - N / 4; ++n) w += x[n] * x[n];
            }
            out.push_back({e, static_cast<long>(j - i), w});
        }
        i = j;
    }
    return out;
}

// ---------------------------------------------------------------- set metrics

namespace {

struct Interval {
    Rational a, b;
};

// midpoint representatives; the endpoint shift is at most half the widest enclosure
std::vector<Interval> representatives(const Spectrum& s, Rational& delta) {
    std::vector<Interval> out;
    delta = Rational(0);
    auto note = [&](const Enclosure& e) { delta = max(delta, e.width() / Rational(2)); };
    for (auto& b : s.bands) {
        note(b.lo);
        note(b.hi);
        Rational a = b.lo.mid();
        out.push_back({a, max(a, b.hi.mid())});
    }
    for (auto& p : s.points) {
        note(p);
        out.push_back({p.mid(), p.mid()});
    }
    std::sort(out.begin(), out.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
    std::vector<Interval> merged;
    for (auto& iv : out) {
        if (!merged.empty() && iv.a <= merged.back().b)
            merged.back().b = max(merged.back().b, iv.b);
        else
            merged.push_back(iv);
    }
    return merged;
}

Rational dist(const Rational& x, const std::vector<Interval>& B) {
    std::optional<Rational> best;
    for (auto& iv : B) {
        Rational d = x < iv.a ? iv.a - x : (x > iv.b ? x - iv.b : Rational(0));
        if (!best || d < *best) best = d;
    }
    return *best;
}

Rational directed(const std::vector<Interval>& A, const std::vector<Interval>& B) {
    Rational h(0);
    for (auto& iv : A) {
        h = max(h, dist(iv.a, B));
        h = max(h, dist(iv.b, B));
        for (size_t j = 0; j + 1 < B.size(); ++j) {
            Rational m = (B[j].b + B[j + 1].a) / Rational(2);
            if (iv.a < m && m < iv.b) h = max(h, dist(m, B));
        }
    }
    return h;
}

}  // namespace

Enclosure hausdorff(const Spectrum& a, const Spectrum& b) {
    if ((a.bands.empty() && a.points.empty()) || (b.bands.empty() && b.points.empty()))
        throw PreconditionError("Hausdorff distance of an empty spectrum");
    Rational da, db;
    auto A = representatives(a, da), B = representatives(b, db);
    Rational h = max(directed(A, B), directed(B, A));
    Rational slack = da + db;
    return {max(Rational(0), h - slack), h + slack};
}

Enclosure lebesgue(const Spectrum& s) {
    Rational lo(0), hi(0);
    for (auto& b : s.bands) {
        lo += max(Rational(0), b.hi.lo - b.lo.hi);
        hi += b.hi.hi - b.lo.lo;
    }
    return {lo, hi};
}

namespace {

// -1 if a < b, +1 if a > b, 0 if equal (both exact); PrecisionError otherwise
int order(const Enclosure& a, const Enclosure& b) {
    if (certainly_below(a, b)) return -1;
    if (certainly_below(b, a)) return 1;
    if (a.is_point() && b.is_point() && a.lo == b.lo) return 0;
    throw PrecisionError("cannot certify the order of " + a.str() + " and " + b.str());
}

}  // namespace

std::vector<Band> intersect_bands(const std::vector<Band>& a, const std::vector<Band>& b) {
    std::vector<Band> out;
    for (auto& x : a)
        for (auto& y : b) {
            // skip pairs whose hulls are certainly apart
            if (x.hi.hi < y.lo.lo || y.hi.hi < x.lo.lo) continue;
            const Enclosure& lo = order(x.lo, y.lo) >= 0 ? x.lo : y.lo;
            const Enclosure& hi = order(x.hi, y.hi) <= 0 ? x.hi : y.hi;
            if (order(lo, hi) <= 0) out.push_back({lo, hi});
        }
    std::sort(out.begin(), out.end(), [](const Band& p, const Band& q) { return p.lo.lo < q.lo.lo; });
    return out;
}

std::vector<Band> union_bands(const std::vector<Band>& a, const std::vector<Band>& b) {
    std::vector<Band> all = a;
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end(), [](const Band& p, const Band& q) { return p.lo.lo < q.lo.lo; });
    std::vector<Band> out;
    for (auto& x : all) {
        if (!out.empty() && order(x.lo, out.back().hi) <= 0) {
            if (order(x.hi, out.back().hi) > 0) out.back().hi = x.hi;
        } else {
            out.push_back(x);
        }
    }
    return out;
}

bool bands_contained(const std::vector<Band>& inner, const std::vector<Band>& outer) {
    for (auto& x : inner) {
        bool found = false;
        for (auto& y : outer)
            if (y.lo.hi <= x.lo.lo && x.hi.hi <= y.hi.lo) found = true;
        if (!found) return false;
    }
    return true;
}

}  // namespace kohmoto
