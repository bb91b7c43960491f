#include "ufrac/cli.hpp"

#include "ufrac/asymptotics.hpp"
#include "ufrac/bounds.hpp"
#include "ufrac/catalog.hpp"
#include "ufrac/defining.hpp"
#include "ufrac/enumerator.hpp"
#include "ufrac/errors.hpp"
#include "ufrac/parametrization.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace ufrac {

namespace {

using json = nlohmann::ordered_json;

struct Context {
    std::ostream& out;
    std::ostream& err;
    unsigned threads = 1;
    bool json = false;
};

unsigned default_threads() {
    const char* v = std::getenv(kThreadsEnv);
    if (!v || !*v) return 1;
    try {
        const Natural t = parse_natural(v);
        if (t < 1 || t > 1024) throw InvalidArgument("");
        return t.convert_to<unsigned>();
    } catch (const InvalidArgument&) {
        throw InvalidArgument(std::string(kThreadsEnv) + " must be an integer in [1, 1024], got '" + v + "'");
    }
}

Natural positive(const std::string& text, const char* what) {
    const Natural v = parse_natural(text);
    if (v == 0) throw InvalidArgument(std::string(what) + " must be positive");
    return v;
}

int terms(int k) {
    if (k < 1 || k > kMaxTerms) throw InvalidArgument("k must lie in [1, " + std::to_string(kMaxTerms) + "]");
    return k;
}

json naturals(const std::vector<Natural>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

Rational exact(double v) {
    int e = 0;
    const double mant = std::frexp(v, &e);
    Rational r(Natural(static_cast<long long>(std::ldexp(mant, 53))));
    e -= 53;
    const Natural p = Natural(1) << std::abs(e);
    return e >= 0 ? r * Rational(p) : r / Rational(p);
}

Rational parse_width(const std::string& text) {
    const auto e = text.find_first_of("eE");
    if (e == std::string::npos) return parse_rational(text);
    const Rational base = parse_rational(text.substr(0, e));
    std::string exp = text.substr(e + 1);
    const bool negative = !exp.empty() && exp[0] == '-';
    if (!exp.empty() && (exp[0] == '-' || exp[0] == '+')) exp.erase(0, 1);
    const Natural k = parse_natural(exp);
    if (k > 10000) throw InvalidArgument("exponent too large: " + text);
    const Rational scale(boost::multiprecision::pow(Natural(10), k.convert_to<unsigned>()));
    return negative ? base / scale : base * scale;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

// ---------------------------------------------------------------------------

int cmd_enumerate(Context& ctx, const std::string& ms, const std::string& ns, int k, std::optional<std::uint64_t> cap) {
    const Fraction f = reduce(positive(ms, "m"), positive(ns, "n"));
    EnumerationOptions opt;
    opt.cap = cap;
    opt.threads = ctx.threads;
    const Enumeration e = enumerate(f, terms(k), opt);
    for (const auto& s : e.solutions) {
        if (ctx.json) {
            json j;
            j["m"] = f.num().str();
            j["n"] = f.den().str();
            j["k"] = k;
            j["solution"] = naturals(s.denominators());
            ctx.out << j.dump() << '\n';
        } else {
            for (std::size_t i = 0; i < s.k(); ++i) ctx.out << (i ? " " : "") << s[i];
            ctx.out << '\n';
        }
    }
    if (e.truncated) ctx.err << "truncated after " << e.solutions.size() << " solutions\n";
    return 0;
}

int cmd_count(Context& ctx, const std::string& ms, const std::string& ns, int k) {
    const Fraction f = reduce(positive(ms, "m"), positive(ns, "n"));
    const Natural c = count(f, terms(k));
    if (ctx.json) {
        json j;
        j["m"] = f.num().str();
        j["n"] = f.den().str();
        j["k"] = k;
        j["count"] = c.str();
        ctx.out << j.dump() << '\n';
    } else {
        ctx.out << c << '\n';
    }
    return 0;
}

int cmd_decompose(Context& ctx, const std::string& ms, const std::string& ns, const std::string& solution,
                  const std::string& convention) {
    const Fraction f = reduce(positive(ms, "m"), positive(ns, "n"));
    ZConvention zc;
    if (convention == "sec2") zc = ZConvention::own_pair;
    else if (convention == "sec6") zc = ZConvention::both_pairs;
    else throw InvalidArgument("unknown z convention '" + convention + "' (expected sec2 or sec6)");
    auto denominators = parse_denominators(solution);
    if (denominators.size() != 4) throw InvalidArgument("a solution needs exactly four denominators");
    const SolutionTuple s(std::move(denominators), f);
    const Decomposition d = decompose(s, f, zc);
    const VerificationReport report = verify(d);
    const CatalogCheck cat = evaluate_catalog(catalog(), d);

    if (ctx.json) {
        json j;
        j["m"] = f.num().str();
        j["n"] = f.den().str();
        j["solution"] = naturals(s.denominators());
        j["convention"] = to_string(zc);
        j["pattern"] = naturals(d.pattern.parts);
        j["t"] = naturals(std::vector<Natural>(d.t.begin(), d.t.end()));
        json dj, xj, zj;
        for (unsigned J : kXSets) {
            if (popcount(J) <= 3) dj["d" + subset_name(J)] = d.d[J].str();
            xj["x" + subset_name(J)] = d.x[J].str();
            if (popcount(J) <= 3) zj["z" + subset_name(J)] = d.z[J].str();
        }
        j["d"] = dj;
        j["x"] = xj;
        j["z"] = zj;
        json failed = json::array();
        for (const auto& c : report.checks)
            if (!c.passed) failed.push_back(c.name + ": " + c.detail);
        j["failed_checks"] = failed;
        j["failed_rules"] = cat.failed_rules;
        j["failed_inequalities"] = cat.failed_inequalities;
        ctx.out << j.dump() << '\n';
    } else {
        ctx.out << "solution " << s.str() << " of " << f.str() << ", z convention " << to_string(zc) << '\n';
        ctx.out << "pattern";
        for (const auto& p : d.pattern.parts) ctx.out << ' ' << p;
        ctx.out << "\nt";
        for (const auto& t : d.t) ctx.out << ' ' << t;
        ctx.out << '\n';
        for (unsigned J : kXSets)
            if (popcount(J) <= 3) ctx.out << "d" << subset_name(J) << " = " << d.d[J] << '\n';
        for (unsigned J : kXSets) ctx.out << "x" << subset_name(J) << " = " << d.x[J] << '\n';
        for (unsigned J : kXSets)
            if (popcount(J) <= 3) ctx.out << "z" << subset_name(J) << " = " << d.z[J] << '\n';
        for (const auto& c : report.checks)
            if (!c.passed) ctx.out << "FAILED " << c.name << ": " << c.detail << '\n';
        for (int r : cat.failed_rules) ctx.out << "FAILED rule " << catalog().rules[r].str() << '\n';
        for (int i : cat.failed_inequalities) ctx.out << "FAILED " << catalog().inequalities[i].name << '\n';
        ctx.out << (report.all_passed() && cat.ok() ? "all checks passed" : "checks failed") << '\n';
    }
    return report.all_passed() && cat.ok() ? 0 : 2;
}

int cmd_catalog(Context& ctx, const std::string& export_path) {
    const Catalog& c = catalog();
    if (!export_path.empty()) {
        std::ofstream file(export_path);
        if (!file) throw InvalidArgument("cannot write " + export_path);
        for (const auto& r : c.rules) file << r.export_line() << '\n';
        if (!file) throw InvalidArgument("cannot write " + export_path);
    }
    for (std::size_t i = 0; i < c.rules.size(); ++i) {
        const auto& r = c.rules[i];
        if (ctx.json) {
            json j;
            j["index"] = i;
            j["family"] = r.family;
            j["inputs"] = r.inputs.names();
            j["outputs"] = r.outputs.names();
            j["equation"] = r.str();
            ctx.out << j.dump() << '\n';
        } else {
            ctx.out << "family " << r.family << "  " << r.str() << '\n';
        }
    }
    for (const auto& q : c.inequalities) {
        if (ctx.json) {
            json j;
            j["template"] = q.name;
            j["inequality"] = q.str();
            ctx.out << j.dump() << '\n';
        } else {
            ctx.out << q.name << "  " << q.str() << '\n';
        }
    }
    return 0;
}

int cmd_closure(Context& ctx, const std::string& set) {
    ctx.out << defining_json(ParamSet::parse(set)) << '\n';
    return 0;
}

int cmd_defining_sets(Context& ctx, int max_size, std::optional<std::uint64_t> budget) {
    DefiningSearchOptions opt;
    opt.threads = ctx.threads;
    if (budget) opt.budget = *budget;
    for (ParamSet s : minimal_defining_sets(max_size, opt)) ctx.out << defining_json(s) << '\n';
    return 0;
}

std::vector<ParamSet> library_from(const std::string& path) {
    if (path.empty()) return default_library();
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read " + path);
    return read_library(in);
}

int cmd_search(Context& ctx, int budget, int g_max, const std::string& library, std::optional<std::uint64_t> nodes) {
    SearchOptions opt;
    opt.threads = ctx.threads;
    if (nodes) opt.node_budget = *nodes;
    const SearchResult r = search(budget, g_max, library_from(library), opt);
    for (const auto& p : r.frontier) {
        for (const auto& w : p.witnesses) {
            if (ctx.json) {
                ctx.out << witness_json(w) << '\n';
            } else {
                ctx.out << "a=" << to_string(p.a) << " b=" << to_string(p.b) << "  A=" << to_string(w.A)
                        << " B=" << to_string(w.B) << " g=" << w.g << "  " << w.witness.str() << '\n';
            }
        }
    }
    if (!ctx.json) ctx.err << r.combinations << " combinations\n";
    if (r.exhausted) ctx.err << "node budget reached; frontier is partial\n";
    return 0;
}

int cmd_replay(Context& ctx, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read " + path);
    std::string line;
    int lines = 0, failed = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++lines;
        const ReplayReport r = replay(line);
        if (ctx.json) {
            json o;
            o["line"] = lines;
            o["ok"] = r.ok();
            o["problems"] = r.problems;
            ctx.out << o.dump() << '\n';
        } else {
            ctx.out << (r.ok() ? "ok    " : "FAIL  ") << "line " << lines;
            for (const auto& p : r.problems) ctx.out << "; " << p;
            ctx.out << '\n';
        }
        failed += !r.ok();
    }
    if (lines == 0) throw InvalidArgument(path + " holds no witnesses");
    return failed ? 2 : 0;
}

json regime_json(const Regime& r) {
    json j;
    j["c"] = to_string(r.c);
    j["value"] = to_string(r.value);
    json f = json::array(), s = json::array();
    for (int i : r.formulas) f.push_back(bound_formulas()[i].label);
    for (int i : r.sources) s.push_back(bound_sources()[i].name);
    j["formulas"] = f;
    j["sources"] = s;
    return j;
}

Float to_float(const Rational& r) { return Float(numerator(r)) / Float(denominator(r)); }

// log of n^a / m^b.
Float log_value(const BoundFormula& f, const Float& ln_n, const Float& ln_m) {
    return to_float(f.n_coeff) * ln_n - to_float(f.m_coeff) * ln_m;
}

int cmd_bound(Context& ctx, const std::string& ms, const std::string& ns) {
    const Natural m = positive(ms, "m"), n = positive(ns, "n");
    if (n < 2) throw InvalidArgument("n must be at least 2");
    using boost::multiprecision::log;
    const Float ln_m = log(Float(m)), ln_n = log(Float(n));
    const double c = (ln_m / ln_n).convert_to<double>();
    const auto& formulas = bound_formulas();
    std::vector<double> values;
    for (const auto& f : formulas) values.push_back(boost::multiprecision::exp(log_value(f, ln_n, ln_m)).convert_to<double>());
    std::vector<double> totals;
    for (const auto& src : bound_sources()) {
        double t = 0;
        for (int f : src.formulas) t += values[f];
        totals.push_back(t);
    }
    std::optional<Regime> r;
    if (m <= n) r = regime(exact(c));
    if (ctx.json) {
        json j;
        j["m"] = m.str();
        j["n"] = n.str();
        j["c"] = c;
        json fs = json::array();
        for (std::size_t i = 0; i < formulas.size(); ++i)
            fs.push_back({{"formula", formulas[i].label}, {"value", values[i]}});
        j["formulas"] = fs;
        json bs = json::array();
        for (std::size_t i = 0; i < totals.size(); ++i)
            bs.push_back({{"bound", bound_sources()[i].name}, {"value", totals[i]}});
        j["bounds"] = bs;
        j["regime"] = r ? regime_json(*r) : json(nullptr);
        ctx.out << j.dump() << '\n';
    } else {
        ctx.out << "c = log m / log n = " << std::setprecision(10) << c << "\nformulas\n";
        for (std::size_t i = 0; i < formulas.size(); ++i)
            ctx.out << "  " << std::left << std::setw(38) << formulas[i].label << std::right << " "
                    << std::setprecision(8) << values[i] << '\n';
        ctx.out << "bounds\n";
        for (std::size_t i = 0; i < totals.size(); ++i)
            ctx.out << "  " << std::left << std::setw(38) << bound_sources()[i].name << std::right << " "
                    << std::setprecision(8) << totals[i] << '\n';
        if (r) {
            ctx.out << "sharpest: " << formulas[r->formula()].label << " = n^" << std::setprecision(10)
                    << r->value.convert_to<double>() << " up to n^eps\n";
        } else {
            ctx.out << "sharpest: none (regimes cover 1 <= m <= n)\n";
        }
    }
    return 0;
}

int cmd_regimes(Context& ctx) {
    const Rational scale = 30345;
    for (const auto& p : regime_table()) {
        const auto& f = bound_formulas()[p.formula];
        if (ctx.json) {
            json j;
            j["lo"] = to_string(p.lo);
            j["hi"] = to_string(p.hi);
            j["alpha_lo"] = to_string(p.lo * scale);
            j["alpha_hi"] = to_string(p.hi * scale);
            j["formula"] = f.label;
            json s = json::array();
            for (int i : p.sources) s.push_back(bound_sources()[i].name);
            j["sources"] = s;
            ctx.out << j.dump() << '\n';
        } else {
            ctx.out << pad(to_string(p.lo), 7) << " <= c <= " << std::left << std::setw(7) << to_string(p.hi)
                    << std::right << "  alpha " << pad(to_string(p.lo * scale), 5) << ".." << std::left
                    << std::setw(5) << to_string(p.hi * scale) << std::right << "  " << std::left << std::setw(18)
                    << f.label << std::right << "  from";
            for (std::size_t i = 0; i < p.sources.size(); ++i)
                ctx.out << (i ? "; " : " ") << bound_sources()[p.sources[i]].name;
            ctx.out << '\n';
        }
    }
    return 0;
}

int cmd_sylvester(Context& ctx, const std::string& width) {
    const Rational w = parse_width(width);
    const SylvesterState s = sylvester(w);
    int digits = 1;
    while (Rational(1, boost::multiprecision::pow(Natural(10), static_cast<unsigned>(digits))) > s.width() / 10)
        ++digits;
    if (ctx.json) {
        json j;
        j["u"] = naturals(s.u);
        j["lower"] = decimal(s.lower, digits);
        j["upper"] = decimal(s.upper, digits, true);
        j["width"] = decimal(s.width(), digits, true);
        ctx.out << j.dump() << '\n';
    } else {
        ctx.out << "u:";
        for (const auto& u : s.u) ctx.out << ' ' << u;
        ctx.out << "\nlower " << decimal(s.lower, digits) << "\nupper " << decimal(s.upper, digits, true)
                << "\nwidth " << decimal(s.width(), digits, true) << '\n';
    }
    return 0;
}

int cmd_fk_bound(Context& ctx, int k, const std::string& ms, const std::string& ns) {
    const FkBound b = fk_bound(k, positive(ms, "m"), positive(ns, "n"));
    if (ctx.json) {
        json j;
        j["k"] = k;
        j["bound"] = b.str();
        j["exponent"] = to_string(b.exponent);
        j["magnitude"] = b.magnitude();
        ctx.out << j.dump() << '\n';
    } else {
        ctx.out << b.str() << " ~ " << b.magnitude() << '\n';
    }
    return 0;
}

int cmd_lift_report(Context& ctx, int n_max) {
    const auto rows = lift_report(n_max, ctx.threads);
    if (!ctx.json) ctx.out << pad("m", 4) << pad("n", 4) << pad("f5", 14) << pad("(n^2/m)^(8/5)", 16) << '\n';
    for (const auto& r : rows) {
        std::ostringstream bound;
        bound << std::setprecision(6) << r.bound.convert_to<double>();
        if (ctx.json) {
            json j;
            j["m"] = r.m.str();
            j["n"] = r.n.str();
            j["f5"] = r.f5.str();
            j["bound"] = bound.str();
            ctx.out << j.dump() << '\n';
        } else {
            ctx.out << pad(r.m.str(), 4) << pad(r.n.str(), 4) << pad(r.f5.str(), 14) << pad(bound.str(), 16) << '\n';
        }
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Context ctx{out, err};
    CLI::App app{"Sums of unit fractions: enumeration, parametrisation and bounds"};
    app.require_subcommand(1);
    std::optional<unsigned> threads;
    app.add_option("--threads", threads, std::string("worker threads (default from ") + kThreadsEnv + " or 1)")
        ->check(CLI::Range(1u, 1024u));
    app.add_flag("--json", ctx.json, "JSON lines output");

    std::string m, n, text, path;
    int k = 4, size = 0, budget = 10, g_max = 6, n_max = 6;
    std::optional<std::uint64_t> cap, limit;

    auto* enumerate_cmd = app.add_subcommand("enumerate", "list every k-term representation of m/n");
    enumerate_cmd->add_option("m", m)->required();
    enumerate_cmd->add_option("n", n)->required();
    enumerate_cmd->add_option("k", k)->required();
    enumerate_cmd->add_option("--cap", cap, "stop after this many solutions");
    enumerate_cmd->add_flag("--json", ctx.json);

    auto* count_cmd = app.add_subcommand("count", "number of k-term representations of m/n");
    count_cmd->add_option("m", m)->required();
    count_cmd->add_option("n", n)->required();
    count_cmd->add_option("k", k)->required();
    count_cmd->add_flag("--json", ctx.json);

    std::string convention = "sec2";
    auto* decompose_cmd = app.add_subcommand("decompose", "parameters of a four-term solution");
    decompose_cmd->add_option("m", m)->required();
    decompose_cmd->add_option("n", n)->required();
    decompose_cmd->add_option("--solution", text, "a1,a2,a3,a4 ascending")->required();
    decompose_cmd->add_option("--z-convention", convention, "sec2 (own pair) or sec6 (both pairs)");
    decompose_cmd->add_flag("--json", ctx.json);

    auto* catalog_cmd = app.add_subcommand("catalog", "print the rules and inequality templates");
    catalog_cmd->add_option("--export", path, "write family|inputs|outputs lines to this file");
    catalog_cmd->add_flag("--json", ctx.json);

    auto* closure_cmd = app.add_subcommand("closure", "closure of a parameter set");
    closure_cmd->add_option("--set", text, "comma-separated parameters, e.g. z23,z234")->required();

    auto* defining_cmd = app.add_subcommand("defining-sets", "minimal defining sets up to a size");
    defining_cmd->add_option("--max-size", size)->required();
    defining_cmd->add_option("--budget", limit, "cap on candidate subsets");

    auto* search_cmd = app.add_subcommand("search", "Pareto frontier of derived bounds");
    search_cmd->add_option("--budget", budget, "total template multiplicity")->capture_default_str();
    search_cmd->add_option("--gmax", g_max, "largest number of parts")->capture_default_str();
    search_cmd->add_option("--library", path, "defining sets to build parts on (default: all minimal sets)");
    search_cmd->add_option("--node-budget", limit, "cap on packing search nodes");
    search_cmd->add_flag("--json", ctx.json);

    auto* replay_cmd = app.add_subcommand("replay", "re-verify a witness file");
    replay_cmd->add_option("--witness", path)->required();
    replay_cmd->add_flag("--json", ctx.json);

    auto* bound_cmd = app.add_subcommand("bound", "the five bounds and the sharpest one for m/n");
    bound_cmd->add_option("m", m)->required();
    bound_cmd->add_option("n", n)->required();
    bound_cmd->add_flag("--json", ctx.json);

    auto* regimes_cmd = app.add_subcommand("regimes", "ranges of c = log m / log n and their sharpest bound");
    regimes_cmd->add_flag("--json", ctx.json);

    auto* sylvester_cmd = app.add_subcommand("sylvester", "certified enclosure of lim u_n^(2^-n)");
    sylvester_cmd->add_option("--width", text, "target width, e.g. 1e-7 or 1/10000000")->required();
    sylvester_cmd->add_flag("--json", ctx.json);

    auto* fk_cmd = app.add_subcommand("fk-bound", "the lifted bound for k >= 5 terms");
    fk_cmd->add_option("k", k)->required();
    fk_cmd->add_option("m", m)->required();
    fk_cmd->add_option("n", n)->required();
    fk_cmd->add_flag("--json", ctx.json);

    auto* lift_cmd = app.add_subcommand("lift-report", "exact f5 next to (n^2/m)^(8/5)");
    lift_cmd->add_option("--nmax", n_max, "largest n, at most 30")->capture_default_str();
    lift_cmd->add_flag("--json", ctx.json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        ctx.threads = threads ? *threads : default_threads();
        if (*enumerate_cmd) return cmd_enumerate(ctx, m, n, k, cap);
        if (*count_cmd) return cmd_count(ctx, m, n, k);
        if (*decompose_cmd) return cmd_decompose(ctx, m, n, text, convention);
        if (*catalog_cmd) return cmd_catalog(ctx, path);
        if (*closure_cmd) return cmd_closure(ctx, text);
        if (*defining_cmd) return cmd_defining_sets(ctx, size, limit);
        if (*search_cmd) return cmd_search(ctx, budget, g_max, path, limit);
        if (*replay_cmd) return cmd_replay(ctx, path);
        if (*bound_cmd) return cmd_bound(ctx, m, n);
        if (*regimes_cmd) return cmd_regimes(ctx);
        if (*sylvester_cmd) return cmd_sylvester(ctx, text);
        if (*fk_cmd) return cmd_fk_bound(ctx, k, m, n);
        if (*lift_cmd) return cmd_lift_report(ctx, n_max);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const ResourceExhausted& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const InvariantViolation& e) {
        err << "invariant violated: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace ufrac
