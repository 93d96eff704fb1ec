#pragma once

// Monte-Carlo campaigns: each trial draws a fresh key-exchange instance, runs
// the configured attack on all four public equations and records which
// unknowns were recovered. Trials are independent and seeded by
// (master_seed, trial_id), so results do not depend on worker count.

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tlab/attacks.hpp"
#include "tlab/protocol.hpp"

namespace tlab {

enum class Variant { Basic, Memory, Lookahead, AvgAut, MultiAut };

std::string_view to_string(Variant v);
Variant variant_from_string(std::string_view s);

/// Serializable description of an attack; conjugators are drawn per trial.
struct AttackSettings {
    Variant variant = Variant::Basic;
    int M = 1;
    int t = 1;
    int bound_factor = 2;
    /// Overrides bound_factor * L when set.
    std::optional<int> step_bound;
    bool repetition_filter = false;
    Halting halting = Halting::ExactOnly;
    int phi_size = 0;
    int conjugator_length = 64;
    TieBreak tie_break = TieBreak::RemainderKey;

    int N(int L) const { return step_bound ? *step_bound : bound_factor * L; }
    LengthFunction::Mode length_mode() const;

    /// Throws std::invalid_argument on inconsistent settings.
    void validate() const;

    /// The attack configuration for one trial; phi supplies the conjugators
    /// for the automorphism variants.
    AttackConfig config_for(int L, std::span<const NormalForm> phi) const;
};

std::string attack_settings_to_json(const AttackSettings& a, int L);
AttackSettings attack_settings_from_json(std::string_view text);

enum class OutputFormat { Csv, Json };

struct ExperimentSpec {
    ProtocolParams params;
    AttackSettings attack;
    int trials = 1000;
    std::uint64_t master_seed = 1;
    OutputFormat output_format = OutputFormat::Csv;
    int jobs = 1;

    void validate() const;
};

struct EquationOutcome {
    EquationKind kind = EquationKind::U1;
    bool success = false;
    SuccessKind success_kind = SuccessKind::None;
    int steps_used = 0;
    std::uint64_t elements_scored = 0;
    int runs = 0;
    /// For successes: a~ w_core b~ = z and the implied key equals K.
    bool solution_verified = false;
};

struct TrialRecord {
    std::uint64_t trial_id = 0;
    bool aborted = false;
    std::string abort_reason;
    std::array<EquationOutcome, 4> equations{};
    bool a_recovered = false;  // equation on u1 or on u2^-1
    bool b_recovered = false;  // equation on u2 or on u1^-1
    bool total_success = false;
    std::chrono::nanoseconds elapsed{0};
};

TrialRecord run_trial(const ExperimentSpec& spec, std::uint64_t trial_id);

/// Attacks the four equations of an existing instance.
TrialRecord attack_instance(const ExperimentSpec& spec, const KeyExchangeInstance& inst,
                            std::span<const NormalForm> phi, std::uint64_t trial_id = 0);

/// 1 - (1 - p_a)^2 (1 - p_b)^2
double total_rate(double p_a, double p_b);

/// 95% normal-approximation half-width.
double binomial_half_width(double p, std::uint64_t n);

struct SummaryTable {
    int L = 0;
    int M = 1;
    int t = 1;
    int phi = 0;
    std::uint64_t trials = 0;   // completed
    std::uint64_t aborted = 0;
    // p_a pools both a-type equations of every completed trial, p_b both b-type ones.
    std::uint64_t a_attempts = 0, a_successes = 0;
    std::uint64_t b_attempts = 0, b_successes = 0;
    std::uint64_t total_successes = 0;
    double p_a = 0, p_b = 0;
    // Fraction of completed trials in which either equation of the type succeeded.
    double p_a_trial = 0, p_b_trial = 0;
    double total_formula = 0;
    double total_empirical = 0;
    double ci_a = 0, ci_b = 0;
};

SummaryTable summarize(const ExperimentSpec& spec, std::span<const TrialRecord> log);

struct ExperimentOutcome {
    SummaryTable table;
    std::vector<TrialRecord> log;
};

ExperimentOutcome run_experiment(const ExperimentSpec& spec);

inline constexpr std::string_view kCsvHeader = "L,M,t,phi,p_a,p_b,total_formula,total_empirical,ci_a,ci_b,trials";

std::string emit_csv(const SummaryTable& table);
/// Deterministic for a fixed spec and seed: no timings are included.
std::string emit_json(const ExperimentSpec& spec, const SummaryTable& table, std::span<const TrialRecord> log);
std::string emit(const ExperimentSpec& spec, const SummaryTable& table, std::span<const TrialRecord> log);

/// Published success rates for one configuration; absent columns are not compared.
struct ReferenceRow {
    std::string id;
    std::optional<double> p_a;
    std::optional<double> p_b;
    std::optional<double> total;
};

struct Tolerance {
    double p_a = 0.03;
    double p_b = 0.03;
    double total = 0.03;
};

struct Comparison {
    bool pass = true;
    std::vector<std::string> lines;
};

/// |measured - reference| <= tolerance per present column (total uses the
/// formula value). Throws std::invalid_argument for a malformed row.
Comparison compare_reference(const SummaryTable& table, const ReferenceRow& ref, const Tolerance& tol);

}  // namespace tlab
