#pragma once

#include "plsemi/omega_fn.hpp"
#include "plsemi/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace plsemi::verify {

/// Deterministic instance generator: same seed, same instances.
struct InstanceGen {
    std::uint64_t seed = 1;
    int count = 200;
    Rational t_min = Rational(0);
    Rational t_max = Rational(3);
    int breakpoint_budget = 6;
};

/// Outcome of one verification suite. All comparisons are exact; a single
/// counterexample is a hard failure and is recorded as the witness.
struct CheckReport {
    std::string check_id;
    int instances = 0;
    int passed = 0;
    std::optional<std::string> witness;  // first failing instance, both sides of the relation
    bool ok() const { return passed == instances; }
};

std::string to_json(const CheckReport& report);
CheckReport check_report_from_json(const std::string& text);

/// Random members of C: lattice breakpoints (denominators <= 64), values
/// clipped to [0,1], slopes clipped to [-1,1].
std::vector<OmegaFn> gen_random_C(const InstanceGen& gen);

const std::vector<std::string>& suite_ids();

CheckReport run_suite(const std::string& check_id, const InstanceGen& gen);
std::vector<CheckReport> run_all(const InstanceGen& gen);

/// Deliberately wrong semigroup variants; each must be caught by at least
/// one suite (a harness that cannot see them proves nothing).
enum class Mutant {
    drop_clamp_upper,          // clamp only from below on [0,t]
    floor_decomposition,       // m = floor(t) whole units instead of half steps
    alpha_ignores_minus_one,   // tail supremum without the value at -1
};

const char* mutant_name(Mutant m);

/// The mutated operator, exposed so tests can probe it directly.
OmegaFn mutant_apply(Mutant m, const Rational& t, const OmegaFn& x);

struct MutationOutcome {
    Mutant mutant;
    bool detected = false;
    std::string failing_suite;  // first suite with a witness
};

std::vector<MutationOutcome> run_mutation_checks(const InstanceGen& gen);

}  // namespace plsemi::verify
