#include "tlab/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace tlab {

using nlohmann::json;

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::Basic: return "basic";
        case Variant::Memory: return "memory";
        case Variant::Lookahead: return "lookahead";
        case Variant::AvgAut: return "avg-aut";
        case Variant::MultiAut: return "multi-aut";
    }
    return "?";
}

Variant variant_from_string(std::string_view s) {
    if (s == "basic") return Variant::Basic;
    if (s == "memory") return Variant::Memory;
    if (s == "lookahead") return Variant::Lookahead;
    if (s == "avg-aut") return Variant::AvgAut;
    if (s == "multi-aut") return Variant::MultiAut;
    throw std::invalid_argument("unknown variant '" + std::string(s) + "'");
}

LengthFunction::Mode AttackSettings::length_mode() const {
    switch (variant) {
        case Variant::AvgAut: return LengthFunction::Mode::Averaged;
        case Variant::MultiAut: return LengthFunction::Mode::Conjugated;
        default: return LengthFunction::Mode::Plain;
    }
}

void AttackSettings::validate() const {
    if (M < 1) throw std::invalid_argument("M must be positive");
    if (t < 1) throw std::invalid_argument("look-ahead depth must be positive");
    if (bound_factor < 1) throw std::invalid_argument("bound factor must be positive");
    if (step_bound && *step_bound < 1) throw std::invalid_argument("step bound must be positive");
    if (phi_size < 0) throw std::invalid_argument("phi size must be nonnegative");
    if (conjugator_length < 1) throw std::invalid_argument("conjugator length must be positive");
    if ((variant == Variant::AvgAut || variant == Variant::MultiAut) && phi_size < 1) {
        throw std::invalid_argument("automorphism variants need --phi-size >= 1");
    }
    if (variant == Variant::Basic && (M != 1 || t != 1)) {
        throw std::invalid_argument("the basic variant runs with M = 1 and t = 1");
    }
}

AttackConfig AttackSettings::config_for(int L, std::span<const NormalForm> phi) const {
    AttackConfig cfg;
    cfg.M = M;
    cfg.lookahead_t = t;
    cfg.step_bound = N(L);
    cfg.repetition_filter = repetition_filter;
    cfg.halting = halting;
    cfg.tie_break = tie_break;
    if (variant == Variant::AvgAut) {
        cfg.length_fn = LengthFunction::averaged({phi.begin(), phi.end()});
    }
    return cfg;
}

std::string attack_settings_to_json(const AttackSettings& a, int L) {
    json j{{"variant", std::string(to_string(a.variant))},
           {"M", a.M},
           {"t", a.t},
           {"N", a.N(L)},
           {"repetition_filter", a.repetition_filter},
           {"halting", std::string(to_string(a.halting))},
           {"length_mode", std::string(to_string(a.length_mode()))},
           {"phi_size", a.phi_size},
           {"conjugator_length", a.conjugator_length},
           {"tie_break", std::string(to_string(a.tie_break))}};
    return j.dump();
}

AttackSettings attack_settings_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed attack config: ") + e.what());
    }
    AttackSettings a;
    if (j.contains("variant")) a.variant = variant_from_string(j["variant"].get<std::string>());
    a.M = j.value("M", a.M);
    a.t = j.value("t", a.t);
    if (j.contains("N")) a.step_bound = j["N"].get<int>();
    a.repetition_filter = j.value("repetition_filter", a.repetition_filter);
    if (j.contains("halting")) a.halting = halting_from_string(j["halting"].get<std::string>());
    a.phi_size = j.value("phi_size", a.phi_size);
    a.conjugator_length = j.value("conjugator_length", a.conjugator_length);
    if (j.contains("tie_break")) a.tie_break = tie_break_from_string(j["tie_break"].get<std::string>());
    if (j.contains("length_mode") && j["length_mode"].get<std::string>() != to_string(a.length_mode())) {
        throw std::invalid_argument("length_mode does not match variant");
    }
    a.validate();
    return a;
}

void ExperimentSpec::validate() const {
    params.validate();
    attack.validate();
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    if (jobs < 1) throw std::invalid_argument("jobs must be positive");
    if (params.L % 2 != 0) throw std::invalid_argument("L must be even (elements of A have even length)");
}

TrialRecord attack_instance(const ExperimentSpec& spec, const KeyExchangeInstance& inst,
                            std::span<const NormalForm> phi, std::uint64_t trial_id) {
    const auto start = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.trial_id = trial_id;
    const AttackConfig cfg = spec.attack.config_for(inst.L, phi);
    const auto views = four_equations(inst);
    for (std::size_t e = 0; e < views.size(); ++e) {
        const EquationView& eq = views[e];
        AttackResult r = spec.attack.variant == Variant::MultiAut ? multiple_attack(eq, phi, cfg)
                                                                  : lookahead_attack(eq, cfg);
        EquationOutcome& out = rec.equations[e];
        out.kind = eq.kind;
        out.success = r.success;
        out.success_kind = r.kind;
        out.steps_used = r.steps_used;
        out.elements_scored = r.elements_scored;
        out.runs = r.runs;
        if (r.success && r.solution) {
            const auto& [left, right] = *r.solution;
            out.solution_verified = product(left, eq.w_core, right) == eq.z && eq.key_from(left, right) == inst.K;
        }
    }
    rec.a_recovered = rec.equations[0].success || rec.equations[3].success;
    rec.b_recovered = rec.equations[1].success || rec.equations[2].success;
    rec.total_success = rec.a_recovered || rec.b_recovered;
    rec.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
    return rec;
}

TrialRecord run_trial(const ExperimentSpec& spec, std::uint64_t trial_id) {
    const RandomStream trial_stream = RandomStream(spec.master_seed).split(trial_id);
    RandomStream instance_rng = trial_stream.split(0);
    RandomStream conjugator_rng = trial_stream.split(1);

    std::vector<NormalForm> phi;
    KeyExchangeInstance inst;
    try {
        inst = generate_instance(spec.params, instance_rng);
        if (spec.attack.phi_size > 0) {
            phi = make_conjugator_set(spec.attack.phi_size, spec.params.s, conjugator_rng,
                                      spec.attack.conjugator_length);
        }
    } catch (const SamplingError& e) {
        TrialRecord rec;
        rec.trial_id = trial_id;
        rec.aborted = true;
        rec.abort_reason = e.what();
        return rec;
    }
    return attack_instance(spec, inst, phi, trial_id);
}

double total_rate(double p_a, double p_b) {
    return 1.0 - (1.0 - p_a) * (1.0 - p_a) * (1.0 - p_b) * (1.0 - p_b);
}

double binomial_half_width(double p, std::uint64_t n) {
    if (n == 0) return 0.0;
    return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

SummaryTable summarize(const ExperimentSpec& spec, std::span<const TrialRecord> log) {
    SummaryTable t;
    t.L = spec.params.L;
    t.M = spec.attack.M;
    t.t = spec.attack.t;
    t.phi = spec.attack.phi_size;
    std::uint64_t a_trials = 0, b_trials = 0;
    for (const auto& rec : log) {
        if (rec.aborted) {
            ++t.aborted;
            continue;
        }
        ++t.trials;
        t.a_attempts += 2;
        t.b_attempts += 2;
        t.a_successes += static_cast<std::uint64_t>(rec.equations[0].success) + rec.equations[3].success;
        t.b_successes += static_cast<std::uint64_t>(rec.equations[1].success) + rec.equations[2].success;
        t.total_successes += rec.total_success;
        a_trials += rec.a_recovered;
        b_trials += rec.b_recovered;
    }
    auto ratio = [](std::uint64_t num, std::uint64_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    t.p_a = ratio(t.a_successes, t.a_attempts);
    t.p_b = ratio(t.b_successes, t.b_attempts);
    t.p_a_trial = ratio(a_trials, t.trials);
    t.p_b_trial = ratio(b_trials, t.trials);
    t.total_formula = total_rate(t.p_a, t.p_b);
    t.total_empirical = ratio(t.total_successes, t.trials);
    t.ci_a = binomial_half_width(t.p_a, t.a_attempts);
    t.ci_b = binomial_half_width(t.p_b, t.b_attempts);
    return t;
}

ExperimentOutcome run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    ExperimentOutcome out;
    out.log.resize(static_cast<std::size_t>(spec.trials));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t id = next++; id < out.log.size(); id = next++) {
            out.log[id] = run_trial(spec, id);
        }
    };
    const int workers = std::min(spec.jobs, spec.trials);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    }
    out.table = summarize(spec, out.log);
    return out;
}

namespace {

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::string emit_csv(const SummaryTable& t) {
    std::string out(kCsvHeader);
    out += '\n';
    out += std::to_string(t.L) + ',' + std::to_string(t.M) + ',' + std::to_string(t.t) + ',' + std::to_string(t.phi) +
           ',' + fixed(t.p_a) + ',' + fixed(t.p_b) + ',' + fixed(t.total_formula) + ',' + fixed(t.total_empirical) +
           ',' + fixed(t.ci_a) + ',' + fixed(t.ci_b) + ',' + std::to_string(t.trials) + '\n';
    return out;
}

std::string emit_json(const ExperimentSpec& spec, const SummaryTable& t, std::span<const TrialRecord> log) {
    json trials = json::array();
    for (const auto& rec : log) {
        json eqs = json::array();
        for (const auto& e : rec.equations) {
            eqs.push_back(json{{"equation", std::string(to_string(e.kind))},
                               {"success", e.success},
                               {"kind", std::string(to_string(e.success_kind))},
                               {"steps_used", e.steps_used},
                               {"elements_scored", e.elements_scored},
                               {"runs", e.runs},
                               {"solution_verified", e.solution_verified}});
        }
        json r{{"trial_id", rec.trial_id},
               {"aborted", rec.aborted},
               {"a_recovered", rec.a_recovered},
               {"b_recovered", rec.b_recovered},
               {"total_success", rec.total_success},
               {"equations", std::move(eqs)}};
        if (rec.aborted) r["abort_reason"] = rec.abort_reason;
        trials.push_back(std::move(r));
    }
    json j{{"spec",
            {{"s", spec.params.s},
             {"L", spec.params.L},
             {"trials", spec.trials},
             {"seed", spec.master_seed},
             {"attack", json::parse(attack_settings_to_json(spec.attack, spec.params.L))}}},
           {"summary",
            {{"L", t.L},
             {"M", t.M},
             {"t", t.t},
             {"phi", t.phi},
             {"p_a", t.p_a},
             {"p_b", t.p_b},
             {"p_a_trial", t.p_a_trial},
             {"p_b_trial", t.p_b_trial},
             {"total_formula", t.total_formula},
             {"total_empirical", t.total_empirical},
             {"ci_a", t.ci_a},
             {"ci_b", t.ci_b},
             {"trials", t.trials},
             {"aborted", t.aborted},
             {"a_successes", t.a_successes},
             {"a_attempts", t.a_attempts},
             {"b_successes", t.b_successes},
             {"b_attempts", t.b_attempts},
             {"total_successes", t.total_successes}}},
           {"trials", std::move(trials)}};
    return j.dump(2) + "\n";
}

std::string emit(const ExperimentSpec& spec, const SummaryTable& table, std::span<const TrialRecord> log) {
    return spec.output_format == OutputFormat::Json ? emit_json(spec, table, log) : emit_csv(table);
}

Comparison compare_reference(const SummaryTable& table, const ReferenceRow& ref, const Tolerance& tol) {
    auto valid = [](const std::optional<double>& v) { return !v || (std::isfinite(*v) && *v >= 0.0 && *v <= 1.0); };
    if (!valid(ref.p_a) || !valid(ref.p_b) || !valid(ref.total)) {
        throw std::invalid_argument("reference row '" + ref.id + "' has a value outside [0, 1]");
    }
    if (!ref.p_a && !ref.p_b && !ref.total) {
        throw std::invalid_argument("reference row '" + ref.id + "' has no columns");
    }
    for (double v : {tol.p_a, tol.p_b, tol.total}) {
        if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("tolerances must be finite and nonnegative");
    }

    Comparison cmp;
    auto check = [&](const char* name, double measured, const std::optional<double>& expected, double within) {
        if (!expected) return;
        const bool ok = std::fabs(measured - *expected) <= within + 1e-12;
        cmp.pass = cmp.pass && ok;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s %-6s measured %.4f reference %.4f tolerance %.4f", ok ? "ok  " : "FAIL",
                      name, measured, *expected, within);
        cmp.lines.emplace_back(buf);
    };
    check("p_a", table.p_a, ref.p_a, tol.p_a);
    check("p_b", table.p_b, ref.p_b, tol.p_b);
    check("total", table.total_formula, ref.total, tol.total);
    return cmp;
}

}  // namespace tlab
