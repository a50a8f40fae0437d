#include "plsemi/verify.hpp"

#include "plsemi/cesaro.hpp"
#include "plsemi/semigroup.hpp"

#include <json.hpp>

#include <functional>
#include <random>
#include <utility>

namespace plsemi::verify {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Deterministic draws; avoids std::uniform_int_distribution, whose mapping
/// is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t below(std::uint64_t n) { return eng_() % n; }

    /// Random lattice rational in [lo, hi] with the given denominator.
    Rational lattice(const Rational& lo, const Rational& hi, long den) {
        const Rational step = Rational(1, static_cast<int>(den));
        const BigInt span = ((hi - lo) / step).floor();
        if (span <= 0) return lo;
        const std::uint64_t k = below(span.get_ui() + 1);
        return lo + Rational(static_cast<long>(k)) * step;
    }

private:
    std::mt19937_64 eng_;
};

OmegaFn random_member(Rng& rng, int budget) {
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(budget)));
    std::vector<Breakpoint> pts;
    Rational u(0);
    Rational v = rng.lattice(Rational(0), Rational(1), 64);
    pts.push_back({u, v});
    for (int i = 1; i < n; ++i) {
        u += rng.lattice(Rational(1, 16), Rational(2), 16);
        // slope in [-1, 1] on the 1/64 lattice keeps the Lipschitz bound
        const Rational slope = rng.lattice(Rational(-1), Rational(1), 64);
        v = min(max(v + slope * (u - pts.back().u), Rational(0)), Rational(1));
        pts.push_back({u, v});
    }
    const Rational minus_one = rng.lattice(Rational(0), Rational(1), 64);
    return OmegaFn(minus_one, std::move(pts)).canonicalized();
}

Rational random_t(Rng& rng, const InstanceGen& gen) {
    return rng.lattice(gen.t_min, gen.t_max, 32);
}

using ApplyFn = std::function<OmegaFn(const Rational&, const OmegaFn&)>;

OmegaFn true_apply(const Rational& t, const OmegaFn& x) { return apply(t, x); }

struct SuiteCtx {
    InstanceGen gen;
    ApplyFn apply_op;
    Rng rng;
};

std::string describe(const OmegaFn& x) { return to_json(x); }

/// Runs `count` instances of a relation; the relation returns nullopt on
/// success and a witness description on failure.
CheckReport run_instances(const std::string& id, int count,
                          const std::function<std::optional<std::string>(int)>& relation) {
    CheckReport report;
    report.check_id = id;
    report.instances = count;
    for (int i = 0; i < count; ++i) {
        std::optional<std::string> failure = relation(i);
        if (!failure) {
            ++report.passed;
        } else if (!report.witness) {
            report.witness = "instance " + std::to_string(i) + ": " + *failure;
        }
    }
    return report;
}

CheckReport suite_sg1(SuiteCtx& ctx) {
    return run_instances("sg1", ctx.gen.count, [&](int) -> std::optional<std::string> {
        const OmegaFn x = random_member(ctx.rng, ctx.gen.breakpoint_budget);
        const OmegaFn y = random_member(ctx.rng, ctx.gen.breakpoint_budget);
        const Rational t = random_t(ctx.rng, ctx.gen);
        const Rational before = sup_dist(x, y);
        const Rational after = sup_dist(ctx.apply_op(t, x), ctx.apply_op(t, y));
        if (after <= before) return std::nullopt;
        return "x=" + describe(x) + " y=" + describe(y) + " t=" + t.str() +
               ": ||T(t)x-T(t)y||=" + after.str() + " > ||x-y||=" + before.str();
    });
}

CheckReport suite_eq_isometric(SuiteCtx& ctx) {
    return run_instances("eq_isometric", ctx.gen.count, [&](int) -> std::optional<std::string> {
        const OmegaFn x = random_member(ctx.rng, ctx.gen.breakpoint_budget);
        const OmegaFn y = random_member(ctx.rng, ctx.gen.breakpoint_budget);
        const Rational t = random_t(ctx.rng, ctx.gen);
        const Rational before = sup_dist(x, y);
        const Rational after = sup_dist(ctx.apply_op(t, x), ctx.apply_op(t, y));
        if (after == before) return std::nullopt;
        return "x=" + describe(x) + " y=" + describe(y) + " t=" + t.str() +
               ": ||T(t)x-T(t)y||=" + after.str() + " != ||x-y||=" + before.str();
    });
}

CheckReport suite_sg2(SuiteCtx& ctx) {
    return run_instances("sg2", ctx.gen.count, [&](int) -> std::optional<std::string> {
        const OmegaFn x = random_member(ctx.rng, ctx.gen.breakpoint_budget);
        const OmegaFn back = ctx.apply_op(Rational(0), x);
        if (back == x) return std::nullopt;
        return "x=" + describe(x) + ": T(0)x=" + describe(back) + " != x";
    });
}

CheckReport suite_semigroup_law(const std::string& id, SuiteCtx& ctx) {
    return run_instances(id, ctx.gen.count, [&](int) -> std::optional<std::string> {
        const OmegaFn x = random_member(ctx.rng, ctx.gen.breakpoint_budget);
        const Rational t1 = random_t(ctx.rng, ctx.gen);
        const Rational t2 = random_t(ctx.rng, ctx.gen);
        const OmegaFn lhs = ctx.apply_op(t1, ctx.apply_op(t2, x));
        const OmegaFn rhs = ctx.apply_op(t1 + t2, x);
        if (lhs == rhs) return std::nullopt;
        return "x=" + describe(x) + " t1=" + t1.str() + " t2=" + t2.str() +
               ": T(t1)T(t2)x=" + describe(lhs) + " != T(t1+t2)x=" + describe(rhs);
    });
}

CheckReport suite_sg4(SuiteCtx& ctx) {
    return run_instances("sg4", ctx.gen.count, [&](int) -> std::optional<std::string> {
        const OmegaFn x = random_member(ctx.rng, ctx.gen.breakpoint_budget);
        const Rational t1 = random_t(ctx.rng, ctx.gen);
        const Rational t2 = random_t(ctx.rng, ctx.gen);
        const Rational lhs = sup_dist(ctx.apply_op(t1, x), ctx.apply_op(t2, x));
        const Rational rhs = abs(t1 - t2);
        if (lhs <= rhs) return std::nullopt;
        return "x=" + describe(x) + " t1=" + t1.str() + " t2=" + t2.str() +
               ": ||T(t1)x-T(t2)x||=" + lhs.str() + " > |t1-t2|=" + rhs.str();
    });
}

CheckReport suite_eq_nonex(SuiteCtx& ctx) {
    return run_instances("eq_nonex", ctx.gen.count, [&](int) -> std::optional<std::string> {
        const OmegaFn x = random_member(ctx.rng, ctx.gen.breakpoint_budget);
        const OmegaFn y = random_member(ctx.rng, ctx.gen.breakpoint_budget);
        const Rational t = random_t(ctx.rng, ctx.gen);
        const Rational norm = sup_dist(x, y);
        const OmegaFn tx = ctx.apply_op(t, x);
        const OmegaFn ty = ctx.apply_op(t, y);
        std::vector<Rational> samples{Rational(-1), Rational(0)};
        for (int k = 0; k < 4; ++k) samples.push_back(ctx.rng.lattice(Rational(0), Rational(8), 32));
        for (const Rational& u : samples) {
            const Rational gap = abs(tx.eval(u) - ty.eval(u));
            if (gap > norm)
                return "x=" + describe(x) + " y=" + describe(y) + " t=" + t.str() + " u=" + u.str() +
                       ": |(T(t)x)(u)-(T(t)y)(u)|=" + gap.str() + " > ||x-y||=" + norm.str();
        }
        return std::nullopt;
    });
}

CheckReport suite_C_invariance(SuiteCtx& ctx) {
    return run_instances("C_invariance", ctx.gen.count, [&](int) -> std::optional<std::string> {
        const OmegaFn x = random_member(ctx.rng, ctx.gen.breakpoint_budget);
        const Rational t = random_t(ctx.rng, ctx.gen);
        const OmegaFn tx = ctx.apply_op(t, x);
        const CMembership m = in_C(tx);
        if (m.in_C) return std::nullopt;
        return "x=" + describe(x) + " t=" + t.str() + ": T(t)x=" + describe(tx) +
               " violates " + m.violation.value_or("?");
    });
}

CheckReport suite_eq_T_t_0(SuiteCtx& ctx) {
    return run_instances("eq_T_t_0", ctx.gen.count, [&](int i) -> std::optional<std::string> {
        // half-integer corners first, then random lattice times in [0, 6]
        Rational t = (i <= 12) ? Rational(i, 2) : ctx.rng.lattice(Rational(0), Rational(6), 32);
        const OmegaFn via_semigroup = ctx.apply_op(t, OmegaFn::zero());
        const OmegaFn closed = orbit_zero_closed_form(t);
        if (via_semigroup == closed) return std::nullopt;
        return "t=" + t.str() + ": T(t)0=" + describe(via_semigroup) +
               " != closed form " + describe(closed);
    });
}

CheckReport suite_eq_F(SuiteCtx& ctx) {
    static const std::vector<Rational> s_grid = {Rational(0), Rational(1, 8), Rational(1, 4),
                                                 Rational(3, 8), Rational(1, 2)};
    static const std::vector<Rational> t_grid = {Rational(1, 4), Rational(1, 2), Rational(1),
                                                 Rational(3, 2), Rational(2)};
    static const std::vector<Rational> probes = {Rational(1, 4), Rational(1, 2), Rational(1)};
    return run_instances("eq_F", ctx.gen.count, [&](int i) -> std::optional<std::string> {
        const Rational s = (i % 2 == 0) ? s_grid[static_cast<std::size_t>(i / 2) % s_grid.size()]
                                        : ctx.rng.lattice(Rational(0), Rational(1, 2), 64);
        const Rational t = (i % 2 == 0) ? t_grid[static_cast<std::size_t>(i / 2) % t_grid.size()]
                                        : ctx.rng.lattice(Rational(1, 32), Rational(2), 32);
        for (const FixedPointKind kind : {FixedPointKind::V, FixedPointKind::W}) {
            const OmegaFn fp = fixed_point({kind, s});
            const OmegaFn moved = ctx.apply_op(t, fp);
            if (moved != fp)
                return std::string(kind == FixedPointKind::V ? "v" : "w") + "_s with s=" + s.str() +
                       " t=" + t.str() + ": T(t)x=" + describe(moved) + " != x=" + describe(fp);
        }
        // characterization is complete: random non-members move under some probe
        const OmegaFn x = random_member(ctx.rng, ctx.gen.breakpoint_budget);
        if (!is_common_fixed_point(x)) {
            bool moved_somewhere = false;
            for (const Rational& p : probes)
                if (ctx.apply_op(p, x) != x) {
                    moved_somewhere = true;
                    break;
                }
            if (!moved_somewhere)
                return "x=" + describe(x) +
                       " is outside the fixed-point families but no probe t in {1/4,1/2,1} moves it";
        }
        return std::nullopt;
    });
}

CheckReport suite_eq_int(SuiteCtx& ctx) {
    CheckReport report;
    report.check_id = "eq_int";
    if (ctx.gen.count == 0) return report;

    auto expect = [&](bool ok, const std::string& what) {
        ++report.instances;
        if (ok) {
            ++report.passed;
        } else if (!report.witness) {
            report.witness = what;
        }
    };

    Rational previous;
    bool have_previous = false;
    Rational t(1);
    for (int k = 1; k <= 10; ++k) {
        t *= Rational(2);  // t = 2^k
        const Rational residual = cesaro_residual(OmegaFn::zero(), t).residual;
        expect(residual == Rational(1) / t,
               "t=" + t.str() + ": exact residual " + residual.str() + " != 1/t");
        if (have_previous)
            expect(residual < previous,
                   "t=" + t.str() + ": residual " + residual.str() + " not strictly below " + previous.str());
        previous = residual;
        have_previous = true;
    }
    const Rational moved = sup_dist(ctx.apply_op(Rational(1), OmegaFn::zero()), OmegaFn::zero());
    expect(moved == Rational(1), "||T(1)0 - 0|| = " + moved.str() + " != 1");
    expect(!is_common_fixed_point(OmegaFn::zero()), "0 reported as a common fixed point");
    return report;
}

CheckReport suite_lemma_alpha_i(SuiteCtx& ctx) {
    return run_instances("lemma_alpha_i", ctx.gen.count, [&](int) -> std::optional<std::string> {
        const OmegaFn x = random_member(ctx.rng, ctx.gen.breakpoint_budget);
        const PLFn alpha = alpha_fn(x);
        const auto& pts = alpha.points();
        for (std::size_t k = 1; k < pts.size(); ++k) {
            const Rational slope = (pts[k].v - pts[k - 1].v) / (pts[k].u - pts[k - 1].u);
            if (slope > Rational(0) || slope < Rational(-1))
                return "x=" + describe(x) + ": alpha segment [" + pts[k - 1].u.str() + "," +
                       pts[k].u.str() + "] has slope " + slope.str() + " outside [-1,0]";
        }
        const Rational u1 = ctx.rng.lattice(Rational(0), Rational(6), 32);
        const Rational u2 = ctx.rng.lattice(Rational(0), Rational(6), 32);
        const Rational gap = abs(alpha.eval(u1) - alpha.eval(u2));
        if (gap > abs(u1 - u2))
            return "x=" + describe(x) + " u1=" + u1.str() + " u2=" + u2.str() +
                   ": |alpha(u1)-alpha(u2)|=" + gap.str() + " > |u1-u2|";
        return std::nullopt;
    });
}

CheckReport suite_lemma_alpha_ii(SuiteCtx& ctx) {
    return run_instances("lemma_alpha_ii", ctx.gen.count, [&](int) -> std::optional<std::string> {
        const OmegaFn x = random_member(ctx.rng, ctx.gen.breakpoint_budget);
        const OmegaFn y = random_member(ctx.rng, ctx.gen.breakpoint_budget);
        const Rational u = ctx.rng.lattice(Rational(0), Rational(6), 32);
        const Rational gap = abs(alpha_fn(x).eval(u) - alpha_fn(y).eval(u));
        const Rational norm = sup_dist(x, y);
        if (gap <= norm) return std::nullopt;
        return "x=" + describe(x) + " y=" + describe(y) + " u=" + u.str() +
               ": |alpha_x(u)-alpha_y(u)|=" + gap.str() + " > ||x-y||=" + norm.str();
    });
}

CheckReport suite_lemma_3_trichotomy(SuiteCtx& ctx) {
    return run_instances("lemma_3_trichotomy", ctx.gen.count, [&](int) -> std::optional<std::string> {
        const OmegaFn x = random_member(ctx.rng, ctx.gen.breakpoint_budget);
        const Rational t = ctx.rng.lattice(Rational(0), Rational(1), 32);
        Rational u1 = ctx.rng.lattice(Rational(0), t, 64);
        Rational u2 = ctx.rng.lattice(Rational(0), t, 64);
        if (u2 < u1) std::swap(u1, u2);

        const Rational g1 = Rational(1) - alpha_fn(x).eval(Rational(1) - t + u1);
        const OmegaFn tx = ctx.apply_op(t, x);
        const Rational at_u1 = tx.eval(u1);
        const Rational at_u2 = tx.eval(u2);
        const Rational x0 = x.eval(Rational(0));
        const std::string inputs =
            "x=" + describe(x) + " t=" + t.str() + " u1=" + u1.str() + " u2=" + u2.str();

        const bool hyp_lower = g1 < at_u2 - u2 + u1;
        const bool hyp_upper = g1 > at_u2 + u2 - u1;
        const bool hyp_mid = abs(g1 - at_u2) <= u2 - u1;
        const int held = int(hyp_lower) + int(hyp_upper) + int(hyp_mid);
        if (held != 1)
            return inputs + ": " + std::to_string(held) + " of the three hypotheses hold";

        if (hyp_lower && !(at_u1 == x0 - t + u1 && at_u2 == x0 - t + u2))
            return inputs + ": case (i) conclusion fails, (T(t)x)(u1)=" + at_u1.str() +
                   " (T(t)x)(u2)=" + at_u2.str() + " x(0)=" + x0.str();
        if (hyp_upper && !(at_u1 == x0 + t - u1 && at_u2 == x0 + t - u2))
            return inputs + ": case (ii) conclusion fails, (T(t)x)(u1)=" + at_u1.str() +
                   " (T(t)x)(u2)=" + at_u2.str() + " x(0)=" + x0.str();
        if (hyp_mid && at_u1 != g1)
            return inputs + ": case (iii) conclusion fails, (T(t)x)(u1)=" + at_u1.str() +
                   " != 1-alpha_x(1-t+u1)=" + g1.str();
        return std::nullopt;
    });
}

using SuiteFn = CheckReport (*)(SuiteCtx&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"lemma_alpha_i", &suite_lemma_alpha_i},
        {"lemma_alpha_ii", &suite_lemma_alpha_ii},
        {"lemma_3_trichotomy", &suite_lemma_3_trichotomy},
        {"sg1", &suite_sg1},
        {"sg2", &suite_sg2},
        {"sg3", [](SuiteCtx& ctx) { return suite_semigroup_law("sg3", ctx); }},
        {"sg4", &suite_sg4},
        {"eq_nonex", &suite_eq_nonex},
        {"eq_isometric", &suite_eq_isometric},
        {"eq_s_plus_t", [](SuiteCtx& ctx) { return suite_semigroup_law("eq_s_plus_t", ctx); }},
        {"eq_F", &suite_eq_F},
        {"eq_T_t_0", &suite_eq_T_t_0},
        {"eq_int", &suite_eq_int},
        {"C_invariance", &suite_C_invariance},
    };
    return table;
}

CheckReport run_suite_with_apply(const std::string& check_id, const InstanceGen& gen,
                                 ApplyFn apply_op) {
    for (const auto& [id, fn] : suite_table()) {
        if (id == check_id) {
            SuiteCtx ctx{gen, std::move(apply_op), Rng(gen.seed ^ fnv1a(check_id))};
            return fn(ctx);
        }
    }
    throw std::invalid_argument("run_suite: unknown check_id '" + check_id + "'");
}

OmegaFn mutant_basic(Mutant m, const Rational& t, const OmegaFn& x) {
    if (t == 0) return x.canonicalized();
    const Rational x0 = x.part().first_v();
    const PLFn shifted = x.part().shifted(t);

    const PLFn alpha = (m == Mutant::alpha_ignores_minus_one)
                           ? tail_sup(x.part())
                           : pl_max(tail_sup(x.part()), PLFn::constant(x.minus_one_value()));
    const PLFn g = PLFn::constant(Rational(1)) - alpha.shifted(t - Rational(1));
    const PLFn lower = PLFn::line({Rational(0), x0 - t}, {t, x0});
    PLFn clamped = pl_max(g, lower);
    if (m != Mutant::drop_clamp_upper) {
        const PLFn upper = PLFn::line({Rational(0), x0 + t}, {t, x0});
        clamped = pl_min(clamped, upper);
    }

    std::vector<Breakpoint> out;
    out.push_back({Rational(0), clamped.eval(Rational(0))});
    for (const Breakpoint& p : clamped.points())
        if (Rational(0) < p.u && p.u < t) out.push_back(p);
    out.push_back({t, clamped.eval(t)});
    for (const Breakpoint& p : shifted.points())
        if (p.u > t) out.push_back(p);
    return OmegaFn(x.minus_one_value(), std::move(out)).canonicalized();
}

}  // namespace

const char* mutant_name(Mutant m) {
    switch (m) {
        case Mutant::drop_clamp_upper: return "drop_clamp_upper";
        case Mutant::floor_decomposition: return "floor_decomposition";
        case Mutant::alpha_ignores_minus_one: return "alpha_ignores_minus_one";
    }
    return "?";
}

OmegaFn mutant_apply(Mutant m, const Rational& t, const OmegaFn& x) {
    if (t < 0) throw std::invalid_argument("mutant_apply: t must be nonnegative");
    const Rational half(1, 2);
    if (m == Mutant::floor_decomposition) {
        // wrong split: whole units counted, half-unit steps taken
        const BigInt whole = t.floor();
        OmegaFn y = mutant_basic(m, t - Rational(whole), x);
        for (BigInt k = 0; k < whole; ++k) y = mutant_basic(m, half, y);
        return y;
    }
    if (t <= Rational(1)) return mutant_basic(m, t, x);
    const Decomposition d = decompose(t);
    OmegaFn y = mutant_basic(m, d.t_prime, x);
    for (BigInt k = 0; k < d.m; ++k) y = mutant_basic(m, half, y);
    return y;
}

std::string to_json(const CheckReport& report) {
    nlohmann::json j;
    j["check_id"] = report.check_id;
    j["instances"] = report.instances;
    j["passed"] = report.passed;
    j["witness"] = report.witness ? nlohmann::json(*report.witness) : nlohmann::json(nullptr);
    return j.dump();
}

CheckReport check_report_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    CheckReport report;
    report.check_id = j.at("check_id").get<std::string>();
    report.instances = j.at("instances").get<int>();
    report.passed = j.at("passed").get<int>();
    if (!j.at("witness").is_null()) report.witness = j.at("witness").get<std::string>();
    return report;
}

std::vector<OmegaFn> gen_random_C(const InstanceGen& gen) {
    if (gen.breakpoint_budget < 1)
        throw std::invalid_argument("gen_random_C: breakpoint budget must be at least 1");
    Rng rng(gen.seed);
    std::vector<OmegaFn> out;
    out.reserve(static_cast<std::size_t>(gen.count));
    for (int i = 0; i < gen.count; ++i) out.push_back(random_member(rng, gen.breakpoint_budget));
    return out;
}

const std::vector<std::string>& suite_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& entry : suite_table()) v.push_back(entry.first);
        return v;
    }();
    return ids;
}

CheckReport run_suite(const std::string& check_id, const InstanceGen& gen) {
    return run_suite_with_apply(check_id, gen, &true_apply);
}

std::vector<CheckReport> run_all(const InstanceGen& gen) {
    std::vector<CheckReport> reports;
    for (const std::string& id : suite_ids()) reports.push_back(run_suite(id, gen));
    return reports;
}

std::vector<MutationOutcome> run_mutation_checks(const InstanceGen& gen) {
    static const std::vector<std::string> targets = {"eq_T_t_0", "eq_s_plus_t", "eq_F",
                                                     "C_invariance", "eq_isometric"};
    std::vector<MutationOutcome> outcomes;
    for (const Mutant m :
         {Mutant::drop_clamp_upper, Mutant::floor_decomposition, Mutant::alpha_ignores_minus_one}) {
        MutationOutcome outcome;
        outcome.mutant = m;
        for (const std::string& id : targets) {
            const CheckReport r = run_suite_with_apply(
                id, gen, [m](const Rational& t, const OmegaFn& x) { return mutant_apply(m, t, x); });
            if (!r.ok()) {
                outcome.detected = true;
                outcome.failing_suite = id;
                break;
            }
        }
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

}  // namespace plsemi::verify
