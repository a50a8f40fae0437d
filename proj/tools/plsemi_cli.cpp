// Command-line front end: evaluate the semigroup, compute Cesàro means and
// residuals, run the verification suites, and emit plot data.
//
// Exit codes: 0 success, 1 check failure, 2 usage error.

#include "plsemi/cesaro.hpp"
#include "plsemi/omega_fn.hpp"
#include "plsemi/semigroup.hpp"
#include "plsemi/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace plsemi;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::optional<std::string>& path, const std::string& content) {
    if (!path) {
        std::cout << content;
        return;
    }
    std::ofstream out(*path);
    if (!out) throw UsageError("cannot write file: " + *path);
    out << content;
}

/// Builtin function literals: zero, v:s, w:s, T0:t; anything else must come
/// from a file.
OmegaFn builtin_fn(const std::string& name) {
    if (name == "zero") return OmegaFn::zero();
    const auto colon = name.find(':');
    if (colon != std::string::npos) {
        const std::string head = name.substr(0, colon);
        const Rational arg = parse_rational(name.substr(colon + 1));
        try {
            if (head == "v") return fixed_point({FixedPointKind::V, arg});
            if (head == "w") return fixed_point({FixedPointKind::W, arg});
            if (head == "T0") return orbit_zero_closed_form(arg);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    throw UsageError("unknown builtin function '" + name + "' (expected zero, v:s, w:s or T0:t)");
}

OmegaFn load_fn(const std::string& builtin, const std::string& path) {
    if (!builtin.empty() && !path.empty())
        throw UsageError("pass either a builtin name or a file, not both");
    if (!builtin.empty()) return builtin_fn(builtin);
    if (!path.empty()) {
        try {
            return omega_fn_from_json(read_file(path));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    throw UsageError("a function is required (--x or --x-file)");
}

void require_member(const OmegaFn& x) {
    const CMembership m = in_C(x);
    if (!m.in_C) throw UsageError("x is not in C: " + m.violation.value_or("?"));
}

/// "p/q", with an optional k-digit decimal rendering. Exact expansions are
/// printed plainly; truncations are labeled approximate.
std::string show_rational(const Rational& r, int decimal_digits) {
    if (decimal_digits <= 0) return r.str();
    const auto exact = r.decimal_exact();
    if (exact && *exact == r.str()) return r.str();
    if (exact) return r.str() + " = " + *exact;
    return r.str() + " ~= " + r.decimal_truncated(decimal_digits) + " (truncated)";
}

/// CSV cell: exact decimal expansion when terminating, else "p/q".
std::string csv_cell(const Rational& r) {
    if (const auto exact = r.decimal_exact()) return *exact;
    return r.str();
}

int cmd_apply(const std::string& t_text, const std::string& x_name, const std::string& x_file,
              const std::optional<std::string>& out, int decimal_digits) {
    const Rational t = parse_rational(t_text);
    if (t < 0) throw UsageError("t must be nonnegative");
    const OmegaFn x = load_fn(x_name, x_file);
    require_member(x);
    const OmegaFn result = apply(t, x);
    write_output(out, to_json(result) + "\n");
    const std::string moved = "sup_dist(result, x) = " + show_rational(sup_dist(result, x), decimal_digits);
    (out ? std::cout : std::cerr) << moved << "\n";
    return kExitOk;
}

int cmd_cesaro(const std::string& t_text, const std::string& x_name, const std::string& x_file,
               const std::string& h_text, const std::optional<std::string>& emit_mean,
               int decimal_digits) {
    const Rational t = parse_rational(t_text);
    if (t <= 0) throw UsageError("t must be positive");
    const OmegaFn x = load_fn(x_name, x_file);
    require_member(x);
    std::optional<Rational> h;
    if (!h_text.empty()) h = parse_rational(h_text);

    ResidualResult res;
    try {
        res = cesaro_residual(x, t, h);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::cout << "residual = " << show_rational(res.residual, decimal_digits) << "\n";
    std::cout << "error_bound = " << show_rational(res.error_bound, decimal_digits) << "\n";

    if (emit_mean) {
        if (h) {
            const CesaroResult r = cesaro_quadrature(x, t, *h);
            write_output(emit_mean, to_json(*r.mean) + "\n");
        } else {
            // exact path: sample the piecewise-quadratic mean at step 1/8;
            // chord interpolation of a quadratic with |A''| <= 1/t is off by
            // at most (1/8)^2 / (8t)
            const ZeroOrbitMean mean = *cesaro_zero_exact(t).exact;
            std::vector<Breakpoint> pts;
            const Rational step(1, 8);
            for (Rational u(0); u <= t; u += step) pts.push_back({u, mean.eval(u)});
            if (pts.back().u < t) pts.push_back({t, mean.eval(t)});
            const OmegaFn sampled = OmegaFn(Rational(0), std::move(pts)).canonicalized();
            write_output(emit_mean, to_json(sampled) + "\n");
            std::cout << "mean_pl_error_bound = "
                      << show_rational(step * step / (Rational(8) * t), decimal_digits) << "\n";
        }
    }
    return kExitOk;
}

int cmd_fixedpoints(const std::string& kind, const std::string& s_text, bool list,
                    const std::string& step_text, const std::string& check_name,
                    const std::string& check_file, const std::optional<std::string>& out) {
    if (!check_name.empty() || !check_file.empty()) {
        const OmegaFn x = load_fn(check_name, check_file);
        require_member(x);
        const bool fixed = is_common_fixed_point(x);
        std::cout << (fixed ? "common fixed point" : "not a common fixed point") << "\n";
        return kExitOk;
    }
    if (list) {
        const Rational step = step_text.empty() ? Rational(1, 8) : parse_rational(step_text);
        if (step <= 0) throw UsageError("step must be positive");
        std::ostringstream table;
        table << "family,s,function\n";
        for (Rational s(0); s <= Rational(1, 2); s += step) {
            table << "v," << s.str() << "," << to_json(fixed_point({FixedPointKind::V, s})) << "\n";
            table << "w," << s.str() << "," << to_json(fixed_point({FixedPointKind::W, s})) << "\n";
        }
        write_output(out, table.str());
        return kExitOk;
    }
    if (kind.empty() || s_text.empty())
        throw UsageError("pass --kind v|w with --s, or --list, or --check/--check-file");
    const Rational s = parse_rational(s_text);
    FixedPointKind fam_kind;
    if (kind == "v") {
        fam_kind = FixedPointKind::V;
    } else if (kind == "w") {
        fam_kind = FixedPointKind::W;
    } else {
        throw UsageError("--kind must be v or w");
    }
    try {
        write_output(out, to_json(fixed_point({fam_kind, s})) + "\n");
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return kExitOk;
}

/// Rows rendered as CSV (default) or a JSON array of records.
std::string render_table(const std::string& format, const std::string& key_a,
                         const std::string& key_b,
                         const std::vector<std::pair<Rational, Rational>>& rows) {
    std::ostringstream body;
    if (format == "csv") {
        body << key_a << "," << key_b << "\n";
        for (const auto& [a, b] : rows) body << csv_cell(a) << "," << csv_cell(b) << "\n";
    } else if (format == "json") {
        body << "[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) body << ",";
            body << "{\"" << key_a << "\":\"" << rows[i].first.str() << "\",\"" << key_b << "\":\""
                 << rows[i].second.str() << "\"}";
        }
        body << "]\n";
    } else {
        throw UsageError("--format must be csv or json");
    }
    return body.str();
}

int cmd_plotdata(const std::string& fn_name, const std::string& fn_file, bool residual_sweep,
                 const std::string& from_text, const std::string& to_text, int samples,
                 long t_from, long t_to, const std::string& format,
                 const std::optional<std::string>& out) {
    if (residual_sweep) {
        if (t_from < 1 || t_to < t_from) throw UsageError("need 1 <= t-from <= t-to");
        std::vector<std::pair<Rational, Rational>> rows;
        for (long tv = t_from; tv <= t_to; ++tv)
            rows.emplace_back(Rational(tv), cesaro_residual(OmegaFn::zero(), Rational(tv)).residual);
        write_output(out, render_table(format, "t", "residual", rows));
        return kExitOk;
    }

    // sampled sources: the profile f, A0:t (exact Cesàro mean), builtins, files
    std::function<Rational(const Rational&)> value;
    Rational lo(0), hi(6);
    std::vector<Rational> vertices;
    if (fn_name == "f") {
        const PLFn f = zero_orbit_profile();
        value = [f](const Rational& u) { return f.eval(u); };
        lo = Rational(-3);
        hi = Rational(1);
        for (const Breakpoint& p : f.points()) vertices.push_back(p.u);
    } else if (fn_name.rfind("A0:", 0) == 0) {
        const Rational t = parse_rational(fn_name.substr(3));
        if (t <= 0) throw UsageError("A0:t needs t > 0");
        const ZeroOrbitMean mean = *cesaro_zero_exact(t).exact;
        value = [mean](const Rational& u) { return mean.eval(u); };
        hi = t + Rational(1);
        for (const auto& piece : mean.pieces()) vertices.push_back(piece.lo);
        vertices.push_back(t);
    } else {
        const OmegaFn x = load_fn(fn_name, fn_file);
        value = [x](const Rational& u) { return x.part().eval(u); };
        hi = x.part().last_u() + Rational(1);
        for (const Breakpoint& p : x.breakpoints()) vertices.push_back(p.u);
    }
    if (!from_text.empty()) lo = parse_rational(from_text);
    if (!to_text.empty()) hi = parse_rational(to_text);
    if (lo > hi) throw UsageError("--from must not exceed --to");
    if (samples < 0) throw UsageError("--samples must be nonnegative");

    std::vector<Rational> grid;
    for (const Rational& u : vertices)
        if (lo <= u && u <= hi) grid.push_back(u);
    grid.push_back(lo);
    grid.push_back(hi);
    for (int k = 1; k < samples; ++k)
        grid.push_back(lo + (hi - lo) * Rational(k) / Rational(samples));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<std::pair<Rational, Rational>> rows;
    for (const Rational& u : grid) rows.emplace_back(u, value(u));
    write_output(out, render_table(format, "u", "value", rows));
    return kExitOk;
}

int cmd_verify(std::uint64_t seed, int count, const std::vector<std::string>& suites,
               bool with_mutants, const std::optional<std::string>& json_path,
               const std::string& t_max_text, int budget) {
    verify::InstanceGen gen;
    gen.seed = seed;
    gen.count = count;
    gen.breakpoint_budget = budget;
    if (!t_max_text.empty()) gen.t_max = parse_rational(t_max_text);

    std::vector<verify::CheckReport> reports;
    if (suites.empty()) {
        reports = verify::run_all(gen);
    } else {
        for (const std::string& id : suites) {
            try {
                reports.push_back(verify::run_suite(id, gen));
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        }
    }

    bool all_ok = true;
    for (const auto& r : reports) {
        all_ok = all_ok && r.ok();
        std::cout << (r.ok() ? "PASS" : "FAIL") << " " << r.check_id << ": " << r.passed << "/"
                  << r.instances << "\n";
        if (r.witness) std::cout << "     witness: " << *r.witness << "\n";
    }

    if (with_mutants) {
        for (const auto& outcome : verify::run_mutation_checks(gen)) {
            const bool caught = outcome.detected;
            all_ok = all_ok && caught;
            std::cout << (caught ? "PASS" : "FAIL") << " mutant " << verify::mutant_name(outcome.mutant)
                      << (caught ? ": detected by " + outcome.failing_suite : ": not detected")
                      << "\n";
        }
    }

    if (json_path) {
        std::string joined = "[";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (i) joined += ",";
            joined += verify::to_json(reports[i]);
        }
        joined += "]\n";
        write_output(json_path, joined);
    }
    return all_ok ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact piecewise-linear calculus for a nonexpansive semigroup on {-1} ∪ [0,inf), "
                 "its Cesàro means, and the verification suites"};
    app.require_subcommand(1);

    std::string t_text, x_name, x_file, h_text;
    std::optional<std::string> out_path, emit_mean, json_path;
    int decimal_digits = 0;

    CLI::App* apply_cmd = app.add_subcommand("apply", "Evaluate T(t)x and print sup_dist(T(t)x, x)");
    apply_cmd->add_option("--t", t_text, "time t >= 0, rational 'p/q'")->required();
    apply_cmd->add_option("--x", x_name, "builtin: zero, v:s, w:s, T0:t");
    apply_cmd->add_option("--x-file", x_file, "path to a serialized function");
    apply_cmd->add_option("--out", out_path, "write the serialized result here");
    apply_cmd->add_option("--decimal", decimal_digits, "also print k-digit decimals");

    CLI::App* cesaro_cmd = app.add_subcommand("cesaro", "Cesàro mean residual ||A(t)x - x||");
    cesaro_cmd->set_help_flag("--help", "print help");  // frees -h for the grid step
    cesaro_cmd->add_option("--t", t_text, "averaging horizon t > 0")->required();
    cesaro_cmd->add_option("--x", x_name, "builtin: zero, v:s, w:s, T0:t");
    cesaro_cmd->add_option("--x-file", x_file, "path to a serialized function");
    cesaro_cmd->add_option("--h", h_text, "trapezoid step (must divide t); optional for x = zero");
    cesaro_cmd->add_option("--emit-mean", emit_mean, "write the mean function here");
    cesaro_cmd->add_option("--decimal", decimal_digits, "also print k-digit decimals");

    std::string fp_kind, fp_s, fp_step, check_name, check_file;
    bool fp_list = false;
    CLI::App* fp_cmd = app.add_subcommand("fixedpoints", "Emit or test common fixed points");
    fp_cmd->add_option("--kind", fp_kind, "family: v or w");
    fp_cmd->add_option("--s", fp_s, "family parameter in [0, 1/2]");
    fp_cmd->add_flag("--list", fp_list, "list both families on a grid");
    fp_cmd->add_option("--step", fp_step, "grid step for --list (default 1/8)");
    fp_cmd->add_option("--check", check_name, "builtin to test for membership");
    fp_cmd->add_option("--check-file", check_file, "file to test for membership");
    fp_cmd->add_option("--out", out_path, "write output here");

    std::string plot_fn, plot_file, plot_from, plot_to, plot_format = "csv";
    bool sweep = false;
    int samples = 0;
    long t_from = 1, t_to = 64;
    CLI::App* plot_cmd = app.add_subcommand("plotdata", "Tables of the constructed functions");
    plot_cmd->add_option("--fn", plot_fn, "source: f, zero, v:s, w:s, T0:t, A0:t");
    plot_cmd->add_option("--fn-file", plot_file, "path to a serialized function");
    plot_cmd->add_option("--from", plot_from, "left end of the sample range");
    plot_cmd->add_option("--to", plot_to, "right end of the sample range");
    plot_cmd->add_option("--samples", samples, "extra uniform samples");
    plot_cmd->add_flag("--residual-sweep", sweep, "emit t,residual for integer t");
    plot_cmd->add_option("--t-from", t_from, "sweep start (default 1)");
    plot_cmd->add_option("--t-to", t_to, "sweep end (default 64)");
    plot_cmd->add_option("--format", plot_format, "csv (default) or json");
    plot_cmd->add_option("--out", out_path, "write the table here");

    std::uint64_t seed = 1;
    int count = 200, budget = 6;
    std::string t_max_text;
    std::vector<std::string> suites;
    bool with_mutants = false;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Run the verification suites");
    verify_cmd->add_option("--seed", seed, "instance generator seed");
    verify_cmd->add_option("--count", count, "instances per suite");
    verify_cmd->add_option("--suite", suites, "run only these suites");
    verify_cmd->add_flag("--mutants", with_mutants, "also run the mutation checks");
    verify_cmd->add_option("--json", json_path, "write reports as JSON here");
    verify_cmd->add_option("--t-max", t_max_text, "upper end of the time range");
    verify_cmd->add_option("--budget", budget, "breakpoint budget per instance");

    try {
        app.parse(argc, argv);
        if (apply_cmd->parsed())
            return cmd_apply(t_text, x_name, x_file, out_path, decimal_digits);
        if (cesaro_cmd->parsed())
            return cmd_cesaro(t_text, x_name, x_file, h_text, emit_mean, decimal_digits);
        if (fp_cmd->parsed())
            return cmd_fixedpoints(fp_kind, fp_s, fp_list, fp_step, check_name, check_file, out_path);
        if (plot_cmd->parsed())
            return cmd_plotdata(plot_fn, plot_file, sweep, plot_from, plot_to, samples, t_from,
                                t_to, plot_format, out_path);
        if (verify_cmd->parsed())
            return cmd_verify(seed, count, suites, with_mutants, json_path, t_max_text, budget);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitUsage;
}
