#include "cli.hpp"

#include "kohmoto/analysis.hpp"
#include "kohmoto/errors.hpp"
#include "kohmoto/tree.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace kohmoto::cli {

namespace {

struct Output {
    std::string format;
    std::string invocation;
    std::ostringstream body;
    nlohmann::json json;
};

void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
    for (auto* a : allowed)
        if (f == a) return;
    std::string list;
    for (auto* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
    throw PreconditionError("unsupported --format " + f + " (expected one of: " + list + ")");
}

std::string spectrum_text(const Spectrum& s) {
    std::ostringstream os;
    for (auto& b : s.bands)
        os << "band " << b.lo.lo.str() << ' ' << b.lo.hi.str() << ' ' << b.hi.lo.str() << ' ' << b.hi.hi.str() << '\n';
    for (auto& p : s.points) os << "point " << p.lo.str() << ' ' << p.hi.str() << '\n';
    os << "tol " << s.tol.str() << '\n';
    return os.str();
}

std::string enc_text(const Enclosure& e) { return e.str(); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact-arithmetic tools for Farey/Sturmian structure and Kohmoto spectra", "kohmoto"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Print help for every subcommand");

    // shared flag storage
    std::string fmt = "text", outpath, V = "5", r, side, tol, E;
    std::string x, y;
    long Q = 25, kmax = 0, depth = 0, n = 0, from = -10, to = 10, level = 0;
    long random_pairs = 0, seed = 1, qmax = 25;
    std::string pairs;
    bool fast = false, no_defects = false;
    unsigned threads = 1;

    auto add_common = [&](CLI::App* c, bool with_format = true) {
        if (with_format) c->add_option("--format", fmt, "Output format");
        c->add_option("--out,-o", outpath, "Write the output to this file");
    };

    Output o;
    std::function<void()> action;

    // ---------------------------------------------------------------- farey
    auto* farey = app.add_subcommand("farey", "Farey distance, neighbours, mediants, continued fractions");
    farey->require_subcommand(1);
    auto* fdist = farey->add_subcommand("dist", "Farey distance d_F(x, y)");
    fdist->add_option("x", x, "Point (p/q, p/q+, p/q-, cf:[...]per[...])")->required();
    fdist->add_option("y", y, "Point")->required();
    add_common(fdist);
    fdist->callback([&] {
        action = [&] {
            require_format(fmt, {"text", "json"});
            FareyPoint a = FareyPoint::parse(x), b = FareyPoint::parse(y);
            o.invocation = "kohmoto farey dist " + a.str() + " " + b.str();
            Rational d = farey_distance(a, b);
            o.body << d.str() << '\n';
            o.json = {{"x", a.str()}, {"y", b.str()}, {"d_F", d.str()}};
        };
    });
    auto* fnb = farey->add_subcommand("neighbors", "Neighbours of r in the Farey sequence F_m");
    fnb->add_option("r", r, "Rational in [0,1]")->required();
    fnb->add_option("--level", level, "Farey level m (default: denominator of r)");
    add_common(fnb);
    fnb->callback([&] {
        action = [&] {
            require_format(fmt, {"text", "json"});
            Rational rr = Rational::parse(r);
            long m = level > 0 ? level : rr.den().get_si();
            o.invocation = "kohmoto farey neighbors " + rr.str() + " --level " + std::to_string(m);
            auto [lo, hi] = farey_neighbors(rr, m);
            std::string a = lo ? lo->str() : "none", b = hi ? hi->str() : "none";
            o.body << a << ' ' << b << '\n';
            o.json = {{"r", rr.str()}, {"level", m}, {"lower", a}, {"upper", b}};
        };
    });
    auto* fmed = farey->add_subcommand("mediant", "Mediant (p+p')/(q+q')");
    fmed->add_option("a", x, "Rational")->required();
    fmed->add_option("b", y, "Rational")->required();
    add_common(fmed);
    fmed->callback([&] {
        action = [&] {
            require_format(fmt, {"text", "json"});
            Rational a = Rational::parse(x), b = Rational::parse(y);
            o.invocation = "kohmoto farey mediant " + a.str() + " " + b.str();
            Rational m = mediant(a, b);
            o.body << m.str() << '\n';
            o.json = {{"a", a.str()}, {"b", b.str()}, {"mediant", m.str()}};
        };
    });
    auto* fcf = farey->add_subcommand("cf", "Continued fraction forms of a point");
    fcf->add_option("x", x, "Rational or cf:[...]per[...]")->required();
    add_common(fcf);
    fcf->callback([&] {
        action = [&] {
            require_format(fmt, {"text", "json"});
            FareyPoint p = FareyPoint::parse(x);
            o.invocation = "kohmoto farey cf " + p.str();
            if (p.is_rational_based()) {
                auto [cs, cl] = cf_forms(p.base());
                o.body << "short " << cs.str() << "\nlong " << cl.str() << '\n';
                o.json = {{"x", p.str()}, {"short", cs.str()}, {"long", cl.str()}};
            } else {
                o.body << p.quadratic().str() << '\n';
                o.json = {{"x", p.str()}, {"cf", p.quadratic().str()}};
            }
        };
    });

    // ---------------------------------------------------------------- tree
    auto* tree = app.add_subcommand("tree", "Weighted Farey tree and its boundary");
    tree->require_subcommand(1);
    auto* tshow = tree->add_subcommand("show", "List the tree down to a depth");
    tshow->add_option("--depth", depth, "Depth (default 3)");
    add_common(tshow);
    tshow->callback([&] {
        action = [&] {
            require_format(fmt, {"text", "json"});
            long d = depth > 0 ? depth : 3;
            o.invocation = "kohmoto tree show --depth " + std::to_string(d);
            o.json = nlohmann::json::array();
            std::function<void(const TreeNode&)> walk = [&](const TreeNode& t) {
                o.body << t.level << ' ' << weight(t).str() << ' ' << t.label() << '\n';
                o.json.push_back({{"label", t.label()}, {"level", t.level}, {"weight", weight(t).str()}});
                if (t.level < d)
                    for (auto& c : children(t)) walk(c);
            };
            walk(TreeNode::root());
        };
    });
    auto* tdist = tree->add_subcommand("dist", "Boundary distance of two points");
    tdist->add_option("x", x, "Point")->required();
    tdist->add_option("y", y, "Point")->required();
    tdist->add_option("--depth", depth, "Path depth (default 14)");
    add_common(tdist);
    tdist->callback([&] {
        action = [&] {
            require_format(fmt, {"text", "json"});
            long d = depth > 0 ? depth : 14;
            FareyPoint a = FareyPoint::parse(x), b = FareyPoint::parse(y);
            o.invocation = "kohmoto tree dist " + a.str() + " " + b.str() + " --depth " + std::to_string(d);
            auto pa = path_of(a, d), pb = path_of(b, d);
            Rational v = boundary_distance(pa, pb);
            o.body << v.str() << '\n';
            o.json = {{"x", a.str()}, {"y", b.str()}, {"depth", d}, {"distance", v.str()}};
        };
    });

    // ---------------------------------------------------------------- word
    auto* word = app.add_subcommand("word", "Configurations, dictionaries and complexity");
    word->require_subcommand(1);
    auto* wshow = word->add_subcommand("show", "Window of the configuration of a point");
    wshow->add_option("x", x, "Point")->required();
    wshow->add_option("--from", from, "First index (default -10)");
    wshow->add_option("--to", to, "Last index (default 10)");
    add_common(wshow);
    wshow->callback([&] {
        action = [&] {
            require_format(fmt, {"text", "json"});
            FareyPoint p = FareyPoint::parse(x);
            o.invocation = "kohmoto word show " + p.str() + " --from " + std::to_string(from) + " --to " +
                           std::to_string(to);
            Configuration c = config_of(p);
            Word w = c.window(from, to);
            o.body << c.notation() << '\n' << w << '\n';
            o.json = {{"x", p.str()}, {"notation", c.notation()}, {"from", from}, {"to", to}, {"window", w}};
        };
    });
    auto* wdict = word->add_subcommand("dict", "Factors of length n");
    wdict->add_option("x", x, "Point")->required();
    wdict->add_option("--n", n, "Factor length")->required();
    add_common(wdict);
    wdict->callback([&] {
        action = [&] {
            require_format(fmt, {"text", "json"});
            FareyPoint p = FareyPoint::parse(x);
            o.invocation = "kohmoto word dict " + p.str() + " --n " + std::to_string(n);
            auto d = dictionary(config_of(p), n);
            std::vector<std::string> ws(d.words.begin(), d.words.end());
            for (auto& w : ws) o.body << w << '\n';
            o.json = {{"x", p.str()}, {"n", n}, {"words", ws}};
        };
    });
    auto* wcx = word->add_subcommand("complexity", "Number of factors of length n");
    wcx->add_option("x", x, "Point")->required();
    wcx->add_option("--n", n, "Factor length")->required();
    add_common(wcx);
    wcx->callback([&] {
        action = [&] {
            require_format(fmt, {"text", "json"});
            FareyPoint p = FareyPoint::parse(x);
            o.invocation = "kohmoto word complexity " + p.str() + " --n " + std::to_string(n);
            long c = complexity(config_of(p), n);
            o.body << c << '\n';
            o.json = {{"x", p.str()}, {"n", n}, {"complexity", c}};
        };
    });
    auto* wdef = word->add_subcommand("defect", "Defect configuration of r+ or r-");
    wdef->add_option("--r", r, "Rational in [0,1]")->required();
    wdef->add_option("--side", side, "plus or minus")->required();
    add_common(wdef);
    wdef->callback([&] {
        action = [&] {
            require_format(fmt, {"text", "json"});
            Rational rr = Rational::parse(r);
            Side s = parse_side(side);
            o.invocation = "kohmoto word defect --r " + rr.str() + " --side " + side_name(s);
            Configuration c = defect_config(rr, s);
            o.body << c.notation() << '\n';
            o.json = {{"r", rr.str()}, {"side", side_name(s)}, {"u", c.u()}, {"v", c.v()}, {"notation", c.notation()}};
        };
    });

    // ---------------------------------------------------------------- spectrum
    auto* spec = app.add_subcommand("spectrum", "Certified spectra");
    spec->require_subcommand(1);
    auto* sb = spec->add_subcommand("bands", "Bands of the periodic operator at r");
    sb->add_option("--r", r, "Rational in [0,1]")->required();
    sb->add_option("--V", V, "Coupling (default 5)");
    sb->add_option("--tol", tol, "Enclosure width (default 1e-9)");
    add_common(sb);
    sb->callback([&] {
        action = [&] {
            require_format(fmt, {"text", "json"});
            Rational rr = Rational::parse(r), vv = Rational::parse(V),
                     tt = tol.empty() ? Rational(1, 1000000000) : Rational::parse(tol);
            o.invocation = "kohmoto spectrum bands --r " + rr.str() + " --V " + vv.str() + " --tol " + tt.str();
            Spectrum s = spectrum_periodic(rr, vv, tt);
            o.body << spectrum_text(s);
            o.json = s.to_json();
        };
    });
    auto* sd = spec->add_subcommand("defects", "Spectrum of the defect operator at r+ or r-");
    sd->add_option("--r", r, "Rational in [0,1]")->required();
    sd->add_option("--side", side, "plus or minus")->required();
    sd->add_option("--V", V, "Coupling (default 5)");
    sd->add_option("--tol", tol, "Enclosure width (default 1e-9)");
    sd->add_option("--kmax", kmax, "Approximant cap (default 64)");
    add_common(sd);
    sd->callback([&] {
        action = [&] {
            require_format(fmt, {"text", "json"});
            Rational rr = Rational::parse(r), vv = Rational::parse(V),
                     tt = tol.empty() ? Rational(1, 1000000000) : Rational::parse(tol);
            Side s = parse_side(side);
            long cap = kmax > 0 ? kmax : 64;
            o.invocation = "kohmoto spectrum defects --r " + rr.str() + " --side " + side_name(s) + " --V " +
                           vv.str() + " --tol " + tt.str() + " --kmax " + std::to_string(cap);
            DefectResult d = defect_spectrum_detailed(rr, s, vv, tt, cap);
            o.body << spectrum_text(d.spectrum) << "k " << d.k << '\n';
            o.json = d.spectrum.to_json();
            o.json["k"] = d.k;
        };
    });
    auto* sm = spec->add_subcommand("member", "Whether E lies in the periodic spectrum at r");
    sm->add_option("--E", E, "Energy (rational or decimal)")->required();
    sm->add_option("--r", r, "Rational in [0,1]")->required();
    sm->add_option("--V", V, "Coupling (default 5)");
    add_common(sm);
    sm->callback([&] {
        action = [&] {
            require_format(fmt, {"text", "json"});
            Rational ee = Rational::parse(E), rr = Rational::parse(r), vv = Rational::parse(V);
            o.invocation = "kohmoto spectrum member --E " + ee.str() + " --r " + rr.str() + " --V " + vv.str();
            bool m = membership(ee, rr, vv);
            o.body << (m ? "true" : "false") << '\n';
            o.json = {{"E", ee.str()}, {"r", rr.str()}, {"V", vv.str()}, {"member", m}};
        };
    });

    // ---------------------------------------------------------------- analyze
    auto* an = app.add_subcommand("analyze", "Experiments on the spectral map");
    an->require_subcommand(1);
    auto* al = an->add_subcommand("lipschitz", "Ratios d_H / d_F over point pairs");
    al->add_option("--pairs", pairs, "Pairs 'x:y,x:y,...'");
    al->add_option("--random", random_pairs, "Number of random pairs instead of --pairs");
    al->add_option("--seed", seed, "Seed for --random (default 1)");
    al->add_option("--Qmax", qmax, "Largest denominator for --random (default 25)");
    al->add_option("--V", V, "Coupling (default 5)");
    al->add_option("--tol", tol, "Enclosure width (default 1e-6)");
    add_common(al);
    al->callback([&] {
        action = [&] {
            require_format(fmt, {"text", "json"});
            Rational vv = Rational::parse(V), tt = tol.empty() ? Rational(1, 1000000) : Rational::parse(tol);
            std::vector<std::pair<FareyPoint, FareyPoint>> ps;
            std::string src;
            if (random_pairs > 0) {
                std::mt19937_64 rng(static_cast<unsigned long>(seed));
                auto pick = [&] {
                    long q = 1 + static_cast<long>(rng() % static_cast<unsigned long>(qmax));
                    long p;
                    do p = static_cast<long>(rng() % static_cast<unsigned long>(q + 1));
                    while (std::gcd(p, q) != 1);
                    Rational rr(p, q);
                    int kind = static_cast<int>(rng() % 3);
                    if (kind == 1 && rr < Rational(1)) return FareyPoint::plus(rr);
                    if (kind == 2 && rr > Rational(0)) return FareyPoint::minus(rr);
                    return FareyPoint::exact(rr);
                };
                while (static_cast<long>(ps.size()) < random_pairs) {
                    FareyPoint a = pick(), b = pick();
                    if (!(a == b)) ps.emplace_back(a, b);
                }
                src = " --random " + std::to_string(random_pairs) + " --seed " + std::to_string(seed) + " --Qmax " +
                      std::to_string(qmax);
            } else {
                if (pairs.empty()) throw PreconditionError("give --pairs or --random");
                std::stringstream ss(pairs);
                std::string item, canon;
                while (std::getline(ss, item, ',')) {
                    auto colon = item.find(':', item.rfind(']') == std::string::npos ? 0 : item.rfind(']'));
                    if (colon == std::string::npos) throw PreconditionError("pair without ':': " + item);
                    FareyPoint a = FareyPoint::parse(item.substr(0, colon)), b = FareyPoint::parse(item.substr(colon + 1));
                    canon += (canon.empty() ? "" : ",") + a.str() + ":" + b.str();
                    ps.emplace_back(a, b);
                }
                src = " --pairs " + canon;
            }
            o.invocation = "kohmoto analyze lipschitz" + src + " --V " + vv.str() + " --tol " + tt.str();
            auto res = lipschitz_sweep(ps, vv, tt);
            o.json["max_ratio"] = {res.max_ratio.lo.str(), res.max_ratio.hi.str()};
            o.json["rows"] = nlohmann::json::array();
            o.body << "max_ratio " << enc_text(res.max_ratio) << " ~" << res.max_ratio.hi.to_double() << '\n';
            for (auto& row : res.rows) {
                o.body << row.x.str() << ' ' << row.y.str() << " d_F " << row.d_F.str() << " d_H ~"
                       << row.d_H.mid().to_double() << " ratio ~" << row.ratio.mid().to_double();
                if (row.q_times_dH) o.body << " q*d_H ~" << row.q_times_dH->mid().to_double();
                o.body << '\n';
                nlohmann::json j = {{"x", row.x.str()},
                                    {"y", row.y.str()},
                                    {"d_F", row.d_F.str()},
                                    {"d_H", {row.d_H.lo.str(), row.d_H.hi.str()}},
                                    {"ratio", {row.ratio.lo.str(), row.ratio.hi.str()}}};
                if (row.q_times_dH) j["q_times_d_H"] = {row.q_times_dH->lo.str(), row.q_times_dH->hi.str()};
                o.json["rows"].push_back(j);
            }
        };
    });
    auto* ao = an->add_subcommand("optimality", "Lower-bound certificate at a one-sided limit");
    ao->add_option("--r", r, "Rational in [0,1]")->required();
    ao->add_option("--side", side, "plus or minus")->required();
    ao->add_option("--V", V, "Coupling (default 5)");
    ao->add_option("--kmax", kmax, "Largest approximant index (default 40)");
    ao->add_option("--tol", tol, "Enclosure width (default 1e-10)");
    add_common(ao);
    ao->callback([&] {
        action = [&] {
            require_format(fmt, {"text", "json"});
            Rational rr = Rational::parse(r), vv = Rational::parse(V),
                     tt = tol.empty() ? Rational(1, 10000000000L) : Rational::parse(tol);
            Side s = parse_side(side);
            long km = kmax > 0 ? kmax : 40;
            o.invocation = "kohmoto analyze optimality --r " + rr.str() + " --side " + side_name(s) + " --V " +
                           vv.str() + " --kmax " + std::to_string(km) + " --tol " + tt.str();
            auto rep = optimality_certificate(rr, s, vv, km, tt);
            o.json = rep.to_json();
            o.body << "C1 " << rep.C1.str() << " ~" << rep.C1.to_double() << "\nC2_observed ~"
                   << rep.C2_observed.to_double() << "\nl0 " << rep.l0 << "\nsubsequence";
            for (long k : rep.subsequence) o.body << ' ' << k;
            o.body << "\nstep3 " << (rep.step3_all ? "holds" : "fails") << "\nstep4 "
                   << (rep.step4_all ? "holds" : "fails") << "\nsandwich " << (rep.sandwich_all ? "holds" : "fails")
                   << '\n';
            for (auto& row : rep.rows) {
                o.body << "k " << row.k << " r_k " << row.r_k.str() << " d_F " << row.d_F.str() << " D_k ";
                if (row.D_k)
                    o.body << '~' << row.D_k->mid().to_double();
                else
                    o.body << "inf";
                o.body << " d_H ~" << row.d_H.mid().to_double() << '\n';
            }
        };
    });
    auto* am = an->add_subcommand("measures", "Overlap measures mu(sigma_r cap sigma_{r_k})");
    am->add_option("--r", r, "Rational in [0,1]")->required();
    am->add_option("--V", V, "Coupling (default 5)");
    am->add_option("--kmax", kmax, "Largest k (default 6)");
    am->add_option("--tol", tol, "Enclosure width (default 1e-9)");
    add_common(am);
    am->callback([&] {
        action = [&] {
            require_format(fmt, {"text", "json"});
            Rational rr = Rational::parse(r), vv = Rational::parse(V),
                     tt = tol.empty() ? Rational(1, 1000000000) : Rational::parse(tol);
            long km = kmax >= 0 && !am->get_option("--kmax")->empty() ? kmax : 6;
            o.invocation = "kohmoto analyze measures --r " + rr.str() + " --V " + vv.str() + " --kmax " +
                           std::to_string(km) + " --tol " + tt.str();
            auto t = measure_experiments(rr, vv, km, tt);
            o.json = t.to_json();
            o.body << "mu ~" << t.mu.mid().to_double() << '\n';
            for (auto& row : t.rows) {
                o.body << "k " << row.k << " r_k " << row.r_k.str() << " overlap ~" << row.overlap.mid().to_double();
                if (row.pair_sum_ok) o.body << " pair_sum " << (*row.pair_sum_ok ? "ok" : "fails");
                if (row.below_half) o.body << " below_half";
                o.body << '\n';
            }
        };
    });

    // ---------------------------------------------------------------- butterfly
    auto* bf = app.add_subcommand("butterfly", "Kohmoto butterfly dataset");
    bf->add_option("--Q", Q, "Largest denominator (default 25)");
    bf->add_option("--V", V, "Coupling (default 5)");
    bf->add_option("--tol", tol, "Enclosure width, certified backend (default 1e-6)");
    bf->add_flag("--fast", fast, "Uncertified floating-point backend");
    bf->add_flag("--no-defects", no_defects, "Leave out the defect points of r- and r+");
    bf->add_option("--threads", threads, "Worker threads (0 = auto); output does not depend on it");
    add_common(bf);
    bf->callback([&] {
        action = [&] {
            if (fmt == "text") fmt = "csv";
            require_format(fmt, {"csv", "json", "svg"});
            Rational vv = Rational::parse(V), tt = tol.empty() ? Rational(1, 1000000) : Rational::parse(tol);
            o.invocation = "kohmoto butterfly --Q " + std::to_string(Q) + " --V " + vv.str() +
                           (fast ? std::string(" --fast") : " --tol " + tt.str()) + (no_defects ? " --no-defects" : "");
            auto ds = butterfly(Q, vv, fast ? Backend::Fast : Backend::Certified, !no_defects, tt, threads);
            if (fmt == "csv") o.body << ds.csv();
            if (fmt == "svg") o.body << ds.svg();
            if (fmt == "json") o.json = ds.to_json();
        };
    });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        // every subcommand with its own flags
        std::function<void(const CLI::App*, const std::string&)> all = [&](const CLI::App* a, const std::string& prev) {
            out << a->help(prev) << '\n';
            std::string here = prev.empty() ? a->get_name() : prev + " " + a->get_name();
            for (const CLI::App* sub : a->get_subcommands({})) all(sub, here);
        };
        all(&app, "");
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        o.format = fmt;
        action();
    } catch (const UnsupportedRegime& e) {
        err << "unsupported regime: " << e.what() << '\n';
        return 4;
    } catch (const PrecisionError& e) {
        err << "precision failure: " << e.what() << '\n';
        return 3;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }

    std::string text;
    if (fmt == "json") {
        nlohmann::json j = {{"invocation", o.invocation}, {"result", o.json}};
        text = j.dump(2) + "\n";
    } else if (fmt == "svg") {
        text = "<!-- " + o.invocation + " -->\n" + o.body.str();
    } else {
        text = "# " + o.invocation + "\n" + o.body.str();
    }
    if (!outpath.empty()) {
        std::ofstream f(outpath, std::ios::binary);
        if (!f) {
            err << "precondition violated: cannot write " << outpath << '\n';
            return 2;
        }
        f << text;
    } else {
        out << text;
    }
    return 0;
}

}  // namespace kohmoto::cli
