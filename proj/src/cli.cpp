#include "pzeta/cli.hpp"

#include "pzeta/closed_forms.hpp"
#include "pzeta/expsums.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pzeta::cli {

using Json = nlohmann::ordered_json;

namespace {

struct CommonOpts {
    std::uint64_t p = 3;
    unsigned a = 1;
    std::string d_csv = "1";
    std::vector<std::string> polys;
    std::string poly_file;
    unsigned m = 1;
    unsigned terms = 0;  // 0 = auto
    unsigned degree_cap = 0;
    unsigned guard = 10;
    unsigned precision = 0;
    std::uint64_t enum_cap = 0;
    std::uint64_t work_cap = 0;
    unsigned threads = 1;
    std::string format = "json";
    std::string twist = "1";
};

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    return std::strtoull(v, nullptr, 10);
}

EnumLimits resolve_limits(const CommonOpts& o) {
    EnumLimits lim;
    lim.ambient_cap = o.enum_cap ? o.enum_cap : env_u64("PZETA_ENUM_CAP", lim.ambient_cap);
    lim.work_cap = o.work_cap ? o.work_cap : env_u64("PZETA_WORK_CAP", lim.work_cap);
    return lim;
}

std::vector<unsigned> parse_d_list(const std::string& csv) {
    std::vector<unsigned> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        int v = std::stoi(item);
        if (v < 1) throw ValidationError("d entries must be >= 1");
        out.push_back(unsigned(v));
    }
    if (out.empty()) throw ValidationError("empty d list");
    return out;
}

std::vector<std::string> load_polys(const CommonOpts& o) {
    std::vector<std::string> texts = o.polys;
    if (!o.poly_file.empty()) {
        std::ifstream in(o.poly_file);
        if (!in) throw ValidationError("cannot open polynomial file " + o.poly_file);
        std::string line;
        while (std::getline(in, line)) {
            auto h = line.find('#');
            if (h != std::string::npos) line = line.substr(0, h);
            bool blank = true;
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
            if (!blank) texts.push_back(line);
        }
    }
    return texts;
}

PolySystem build_system(const CommonOpts& o, const EnumLimits& lim, bool need_poly = true) {
    TowerSpec spec{o.p, o.a, parse_d_list(o.d_csv), 1};
    auto tower = build_tower(spec, lim);
    auto texts = load_polys(o);
    if (need_poly && texts.empty()) throw ValidationError("no polynomial given");
    std::vector<MultiPoly> polys;
    for (const auto& t : texts) polys.push_back(parse_poly(t, unsigned(spec.d_list.size()), *tower));
    PolySystem sys{spec, tower, std::move(polys)};
    sys.validate();
    return sys;
}

Fe parse_twist(const std::string& text, const FieldTower& tower) {
    MultiPoly f = parse_poly(text, 1, tower);
    if (f.total_degree() != 0) throw ValidationError("twist must be a constant");
    Fe b = f.is_zero() ? Fe{0} : f.terms[0].coeff;
    if (b.code == 0) throw ValidationError("twist must be nonzero");
    return b;
}

Json config_json(const CommonOpts& o, const EnumLimits& lim) {
    Json j;
    j["p"] = o.p;
    j["a"] = o.a;
    j["d"] = parse_d_list(o.d_csv);
    j["threads"] = o.threads;
    j["enum_cap"] = lim.ambient_cap;
    j["work_cap"] = lim.work_cap;
    j["format"] = o.format;
    return j;
}

std::string rat_coeff_str(const Rat& r) { return rat_str(r); }

Json upoly_json(const UPoly<Rat>& f) {
    Json arr = Json::array();
    if (f.empty()) arr.push_back("0");
    for (const auto& c : f) arr.push_back(rat_coeff_str(c));
    return arr;
}

Json cyclo_json(const CycloQ& c) {
    Json arr = Json::array();
    for (const auto& x : c.c) arr.push_back(rat_str(x));
    return arr;
}

Json upoly_cyclo_json(const UPoly<CycloQ>& f) {
    Json arr = Json::array();
    for (const auto& c : f) arr.push_back(cyclo_json(c));
    return arr;
}

std::string upoly_human(const UPoly<Rat>& f) {
    if (f.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        Rat c = f[i];
        bool neg = c < 0;
        if (neg) c = -c;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        std::string cs = rat_str(c);
        if (i == 0)
            s += cs;
        else {
            if (cs != "1") s += cs;
            s += "T";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

std::string factored_human(const Factored& fac, const RatFn& fn) {
    auto side = [&](bool num_side) {
        std::string s;
        for (const auto& [gamma, e] : fac.linear) {
            if ((e > 0) != num_side) continue;
            long long mult = e > 0 ? e : -e;
            std::string base = gamma >= 0 ? "(1 - " + gamma.str() + "T)"
                                          : "(1 + " + (-gamma).str() + "T)";
            s += base;
            if (mult > 1) s += "^" + std::to_string(mult);
        }
        for (const auto& [blk, e] : fac.blocks) {
            if ((e > 0) != num_side) continue;
            s += "(" + upoly_human(blk) + ")";
        }
        return s.empty() ? "1" : s;
    };
    std::string top = side(true), bot = side(false);
    if (bot == "1") return top;
    (void)fn;
    return top + "/" + bot;
}

Json ratfn_json(const RatFn& fn) {
    Json j;
    j["num"] = upoly_json(fn.num);
    j["den"] = upoly_json(fn.den);
    Factored fac = factor_over_q(fn);
    if (fac.blocks.empty()) {
        Json arr = Json::array();
        for (const auto& [gamma, e] : fac.linear)
            arr.push_back(Json{{"gamma", gamma.str()}, {"exp", e}});
        j["factors"] = arr;
    }
    j["display"] = factored_human(fac, fn);
    return j;
}

// Largest level m whose ambient field and enumeration work fit the caps.
unsigned affordable_levels(const PolySystem& sys, const EnumLimits& lim, unsigned hard_max = 64) {
    unsigned best = 0;
    for (unsigned m = 1; m <= hard_max; ++m) {
        Int ambient = 1;
        for (unsigned j = 0; j < sys.spec.ambient_degree() * m / sys.spec.m; ++j)
            ambient *= sys.spec.p;
        if (ambient > lim.ambient_cap) break;
        if (enumeration_work(sys, m) > lim.work_cap) break;
        best = m;
    }
    return best;
}

struct ZetaOutcome {
    RatFn fn;
    unsigned terms_used = 0;
    unsigned degree_cap_used = 0;
    unsigned guard_used = 0;
};

// Degree-cap ladder (start 8, double) with a guard ladder (10, 5, 3, 1) so
// shallow count sequences still reconstruct when the true degree is small.
ZetaOutcome zeta_from_counts(const std::vector<Int>& counts, unsigned degree_cap_opt,
                             unsigned guard_opt) {
    std::vector<Rat> s;
    s.reserve(counts.size());
    for (const auto& c : counts) s.push_back(Rat(c));
    std::vector<unsigned> caps;
    if (degree_cap_opt)
        caps = {degree_cap_opt};
    else
        for (unsigned c = 8; c <= 64; c *= 2) caps.push_back(c);
    std::vector<unsigned> guards;
    if (guard_opt != 10)
        guards = {guard_opt};
    else
        guards = {10, 5, 3, 1};

    std::string last_err = "reconstruction failed";
    for (unsigned cap : caps) {
        for (unsigned g : guards) {
            try {
                RatFn fn = reconstruct(s, cap, g);
                return {fn, unsigned(s.size()), cap, g};
            } catch (const InsufficientTermsError& e) {
                last_err = e.what();
                continue;  // smaller guard
            } catch (const DegreeCapError& e) {
                last_err = e.what();
                break;  // larger cap
            }
        }
    }
    throw SizeError(last_err);
}

// ---- subcommand handlers ------------------------------------------------

Json do_count(const CommonOpts& o, const EnumLimits& lim) {
    PolySystem sys = build_system(o, lim);
    unsigned M = o.m;
    auto seq = count_sequence(sys, M, lim, o.threads);
    Json out;
    Json vals = Json::array();
    for (const auto& v : seq.values) vals.push_back(v.str());
    out["levels"] = M;
    out["counts"] = vals;
    return out;
}

Json do_zeta(const CommonOpts& o, const EnumLimits& lim) {
    PolySystem sys = build_system(o, lim);
    unsigned M = o.terms ? o.terms : affordable_levels(sys, lim);
    if (M == 0) throw SizeError("no tower level fits the enumeration caps");
    auto seq = count_sequence(sys, M, lim, o.threads);
    ZetaOutcome z = zeta_from_counts(seq.values, o.degree_cap, o.guard);
    Json out;
    out["terms_used"] = z.terms_used;
    out["degree_cap"] = z.degree_cap_used;
    out["guard"] = z.guard_used;
    Json counts = Json::array();
    for (const auto& v : seq.values) counts.push_back(v.str());
    out["counts"] = counts;
    out["zeta"] = ratfn_json(z.fn);
    return out;
}

Json do_curve(const CommonOpts& o, const EnumLimits& lim, unsigned n) {
    auto d = parse_d_list(o.d_csv);
    if (d.size() != 2) throw ValidationError("curve needs d = d1,d2");
    CurveSpec curve{n, o.p, o.a, d[0], d[1]};
    RatFn closed = curve_zeta_closed_form(curve);

    Json out;
    out["n"] = n;
    out["c"] = curve.c();
    Json aks = Json::array();
    unsigned phi = euler_phi(n);
    for (unsigned k = 1; k <= phi; ++k) {
        if (phi % k != 0) continue;
        aks.push_back(Json{{"k", k}, {"a_k", a_k_exponent(curve, k).str()}});
    }
    out["a"] = aks;
    out["zeta"] = ratfn_json(closed);
    out["degree_bound_ok"] = degree_bound_check(curve);

    // cross-check the closed form against enumerated counts where affordable
    TowerSpec spec{o.p, o.a, d, 1};
    auto tower = build_tower(spec, lim);
    MultiPoly f = parse_poly("y - x^" + std::to_string(n), 2, *tower);
    PolySystem sys{spec, tower, {f}};
    unsigned M = std::min(affordable_levels(sys, lim), 12u);
    bool ok = true;
    auto expect = ratfn_to_sequence(closed, M);
    for (unsigned m = 1; m <= M; ++m) {
        Int got = count_points(sys, m, lim, o.threads);
        if (Rat(got) != expect[m - 1]) ok = false;
    }
    out["cross_check"] = Json{{"levels", M}, {"match", ok}};
    if (!ok) throw ConsistencyError("closed form disagrees with enumerated counts");
    return out;
}

Json do_bounds(const CommonOpts& o, const EnumLimits& lim) {
    PolySystem sys = build_system(o, lim);
    BoundReport rep = verify_divisibility(sys, lim, o.threads);
    Json out;
    out["omega"] = rep.bound == 0 ? 0 : ceil_rat(rep.bound).convert_to<long long>();
    out["N1"] = rep.n1.str();
    out["value"] = ord_str(rep.value);
    out["pass"] = rep.pass;
    out["vacuous"] = rep.vacuous;
    return out;
}

Json do_expsum(const CommonOpts& o, const EnumLimits& lim) {
    PolySystem sys = build_system(o, lim);
    if (sys.polys.size() != 1) throw ValidationError("expsum takes exactly one polynomial");
    Fe twist = parse_twist(o.twist, *sys.tower);
    auto seq = sum_sequence(sys, o.m, twist, lim, o.threads);
    Json out;
    out["twist"] = print_coeff(twist, *sys.tower);
    Json vals = Json::array();
    for (const auto& z : seq.values) {
        Json coords = Json::array();
        for (const auto& c : z.c) coords.push_back(c.str());
        OrdVal v = pi_adic_valuation(z);
        vals.push_back(Json{{"coords", coords},
                            {"ord_q", v ? Json(rat_str(*v / Rat(Int(o.a)))) : Json("inf")}});
    }
    out["sums"] = vals;
    return out;
}

Json do_lfunction(const CommonOpts& o, const EnumLimits& lim) {
    PolySystem sys = build_system(o, lim);
    if (sys.polys.size() != 1) throw ValidationError("lfunction takes exactly one polynomial");
    Fe twist = parse_twist(o.twist, *sys.tower);
    unsigned M = o.terms ? o.terms : affordable_levels(sys, lim);
    if (M == 0) throw SizeError("no tower level fits the enumeration caps");
    auto seq = sum_sequence(sys, M, twist, lim, o.threads);
    std::vector<CycloQ> s;
    for (const auto& z : seq.values) s.push_back(z.to_cyclo_q());

    std::vector<unsigned> caps = o.degree_cap ? std::vector<unsigned>{o.degree_cap}
                                              : std::vector<unsigned>{8, 16, 32, 64};
    std::vector<unsigned> guards =
        o.guard != 10 ? std::vector<unsigned>{o.guard} : std::vector<unsigned>{10, 5, 3, 1};
    std::string last_err = "reconstruction failed";
    for (unsigned cap : caps)
        for (unsigned g : guards) {
            try {
                RatFnC fn = reconstruct(s, cap, g);
                Json out;
                out["terms_used"] = M;
                out["degree_cap"] = cap;
                out["guard"] = g;
                out["conductor"] = o.p;
                out["num"] = upoly_cyclo_json(fn.num);
                out["den"] = upoly_cyclo_json(fn.den);
                if (auto rat = ratfn_to_rational(fn)) out["rational"] = ratfn_json(*rat);
                return out;
            } catch (const InsufficientTermsError& e) {
                last_err = e.what();
                continue;
            } catch (const DegreeCapError& e) {
                last_err = e.what();
                break;
            }
        }
    throw SizeError(last_err);
}

Json do_gauss(const CommonOpts& o, const EnumLimits& lim) {
    auto d = parse_d_list(o.d_csv);
    TowerSpec spec{o.p, o.a, d, 1};
    auto tower = build_tower(spec, lim);
    std::uint64_t top = tower->order() - 1;
    if (top > 512) throw SizeError("gauss table limited to q^d <= 513");
    Json rows = Json::array();
    bool all = true;
    for (std::uint64_t m = 0; m <= top; ++m) {
        GaussCoefficient gc = gauss_coefficient(m, *tower, o.precision);
        bool match = gc.ord_q == gc.stickelberger;
        all = all && match;
        rows.push_back(Json{{"m", m},
                            {"ord_q", rat_str(gc.ord_q)},
                            {"stickelberger", rat_str(gc.stickelberger)},
                            {"match", match}});
    }
    Json out;
    out["q_d"] = top + 1;
    out["rows"] = rows;
    out["all_match"] = all;
    return out;
}

struct SweepOpts {
    unsigned n_max = 12;
    std::uint64_t a_max = 5;
    unsigned d_max = 4;
};

Json sweep_conjecture_lines(const SweepOpts& so, std::string& lines) {
    SweepReport rep = conjecture_sweep(so.n_max, so.a_max, so.d_max);
    for (const auto& e : rep.entries) {
        Json j;
        j["n"] = e.n;
        j["a"] = e.base;
        j["d"] = e.d;
        j["k"] = e.k;
        j["a_k"] = e.value;
        j["integral"] = e.integral;
        lines += j.dump() + "\n";
    }
    return Json{{"entries", rep.entries.size()}, {"violations", rep.violations}};
}

Json sweep_galois_lines(const SweepOpts& so, std::string& lines) {
    unsigned checked = 0, failures = 0;
    for (unsigned n = 2; n <= so.n_max; ++n)
        for (std::uint64_t q : {2, 3, 4, 5, 7}) {
            std::uint64_t p = q == 4 ? 2 : q;
            unsigned a = q == 4 ? 2 : 1;
            for (unsigned d1 = 1; d1 <= 3; ++d1)
                for (unsigned d2 = 1; d2 <= 3; ++d2) {
                    CurveSpec curve{n, p, a, d1, d2};
                    GaloisCheck gc = galois_consistency(curve);
                    ++checked;
                    if (!gc.consistent) ++failures;
                    Json j;
                    j["n"] = n;
                    j["q"] = q;
                    j["d_1"] = d1;
                    j["d_2"] = d2;
                    j["consistent"] = gc.consistent;
                    if (!gc.consistent) j["witness"] = gc.witness;
                    lines += j.dump() + "\n";
                }
        }
    return Json{{"entries", checked}, {"violations", failures}};
}

// ---- formatting ----------------------------------------------------------

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

std::string render(const Json& envelope, const std::string& format) {
    if (format == "json") return envelope.dump() + "\n";
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(envelope, "", rows);
    std::string out;
    for (const auto& [k, v] : rows)
        out += format == "tsv" ? k + "\t" + v + "\n" : k + " = " + v + "\n";
    return out;
}

}  // namespace

RunResult run(const std::vector<std::string>& args) {
    CLI::App app{"partial zeta functions, partial exponential sums, and p-adic estimates"};
    app.require_subcommand(1);

    CommonOpts o;
    SweepOpts so;
    std::string sweep_kind;

    auto add_common = [&](CLI::App* cmd, bool with_poly) {
        cmd->add_option("--p", o.p, "characteristic");
        cmd->add_option("--a", o.a, "q = p^a");
        cmd->add_option("--d", o.d_csv, "comma-separated d_1,..,d_n");
        if (with_poly) {
            cmd->add_option("--poly", o.polys, "polynomial (repeatable)");
            cmd->add_option("--poly-file", o.poly_file, "file with one polynomial per line");
        }
        cmd->add_option("--m", o.m, "number of tower levels");
        cmd->add_option("--terms", o.terms, "sequence terms (default: auto within caps)");
        cmd->add_option("--degree-cap", o.degree_cap, "reconstruction degree cap");
        cmd->add_option("--guard", o.guard, "guard terms for reconstruction");
        cmd->add_option("--enum-cap", o.enum_cap, "ambient field size cap");
        cmd->add_option("--work-cap", o.work_cap, "enumerated points cap");
        cmd->add_option("--precision", o.precision, "p-adic precision K");
        cmd->add_option("--threads", o.threads, "worker threads");
        cmd->add_option("--format", o.format, "json | tsv | human")
            ->check(CLI::IsMember({"json", "tsv", "human"}));
        cmd->add_option("--twist", o.twist, "additive character twist b");
    };

    unsigned curve_n = 2;
    auto* c_count = app.add_subcommand("count", "point counts N_m");
    add_common(c_count, true);
    auto* c_zeta = app.add_subcommand("zeta", "reconstructed partial zeta function");
    add_common(c_zeta, true);
    auto* c_curve = app.add_subcommand("curve", "closed form for y = x^n");
    add_common(c_curve, false);
    c_curve->add_option("--n", curve_n, "curve exponent")->required();
    auto* c_bounds = app.add_subcommand("bounds", "divisibility bound report");
    add_common(c_bounds, true);
    auto* c_expsum = app.add_subcommand("expsum", "partial exponential sums");
    add_common(c_expsum, true);
    auto* c_lfun = app.add_subcommand("lfunction", "L-function of partial exponential sums");
    add_common(c_lfun, true);
    auto* c_gauss = app.add_subcommand("gauss", "Stickelberger table of Gauss coefficients");
    add_common(c_gauss, false);
    auto* c_sweep = app.add_subcommand("sweep", "conjecture / consistency sweeps");
    c_sweep->add_option("kind", sweep_kind, "conjecture | galois")->required();
    c_sweep->add_option("--n-max", so.n_max, "max n");
    c_sweep->add_option("--a-max", so.a_max, "max base");
    c_sweep->add_option("--d-max", so.d_max, "max d");
    add_common(c_sweep, false);

    RunResult result;
    std::vector<const char*> argv;
    argv.push_back("pzeta");
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream os, es;
        int code = app.exit(e, os, es);
        result.out = os.str();
        result.err = es.str();
        result.code = code == 0 ? 0 : 1;
        return result;
    }

    EnumLimits lim = resolve_limits(o);
    Json envelope;
    try {
        Json cfg = config_json(o, lim);
        std::string lines;
        Json res;
        std::string command;
        if (app.got_subcommand(c_count)) {
            command = "count";
            cfg["m"] = o.m;
            cfg["poly"] = load_polys(o);
            res = do_count(o, lim);
        } else if (app.got_subcommand(c_zeta)) {
            command = "zeta";
            cfg["poly"] = load_polys(o);
            res = do_zeta(o, lim);
        } else if (app.got_subcommand(c_curve)) {
            command = "curve";
            cfg["n"] = curve_n;
            res = do_curve(o, lim, curve_n);
        } else if (app.got_subcommand(c_bounds)) {
            command = "bounds";
            cfg["poly"] = load_polys(o);
            res = do_bounds(o, lim);
        } else if (app.got_subcommand(c_expsum)) {
            command = "expsum";
            cfg["m"] = o.m;
            cfg["poly"] = load_polys(o);
            res = do_expsum(o, lim);
        } else if (app.got_subcommand(c_lfun)) {
            command = "lfunction";
            cfg["poly"] = load_polys(o);
            res = do_lfunction(o, lim);
        } else if (app.got_subcommand(c_gauss)) {
            command = "gauss";
            res = do_gauss(o, lim);
        } else if (app.got_subcommand(c_sweep)) {
            command = "sweep " + sweep_kind;
            cfg["n_max"] = so.n_max;
            cfg["a_max"] = so.a_max;
            cfg["d_max"] = so.d_max;
            if (sweep_kind == "conjecture")
                res = sweep_conjecture_lines(so, lines);
            else if (sweep_kind == "galois")
                res = sweep_galois_lines(so, lines);
            else
                throw ValidationError("unknown sweep kind '" + sweep_kind + "'");
            if (unsigned(res["violations"].get<std::uint64_t>()) > 0)
                throw ConsistencyError("sweep found violations");
        }
        envelope["command"] = command;
        envelope["config"] = cfg;
        envelope["result"] = res;
        if (o.format == "json" && !lines.empty())
            result.out = envelope.dump() + "\n" + lines;
        else
            result.out = render(envelope, o.format) + lines;
        result.code = 0;
    } catch (const ValidationError& e) {
        result.err = std::string("validation error: ") + e.what() + "\n";
        result.code = 1;
    } catch (const SizeError& e) {
        result.err = std::string("cap exceeded: ") + e.what() + "\n";
        result.code = 2;
    } catch (const PrecisionError& e) {
        result.err = std::string("precision exhausted: ") + e.what() + "\n";
        result.code = 2;
    } catch (const ConsistencyError& e) {
        result.err = std::string("mathematical consistency failure: ") + e.what() + "\n";
        result.code = 3;
    }
    return result;
}

}  // namespace pzeta::cli
