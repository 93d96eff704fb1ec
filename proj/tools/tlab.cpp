// tlab: key generation, single-instance attacks, Monte-Carlo campaigns and
// regression against the published success rates.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "tlab/attacks.hpp"
#include "tlab/harness.hpp"
#include "tlab/protocol.hpp"
#include "tlab/random.hpp"
#include "tlab/reference.hpp"
#include "tlab/serialization.hpp"

namespace {

struct AttackOptions {
    std::string variant = "basic";
    int M = 1;
    int t = 1;
    int bound_factor = 2;
    int step_bound = 0;
    bool no_filter = false;
    std::string halting = "exact";
    int phi_size = 0;
    int conjugator_length = 64;
    std::string tie_break = "remainder-key";

    void add_to(CLI::App& app) {
        app.add_option("--variant", variant, "basic | memory | lookahead | avg-aut | multi-aut")
            ->check(CLI::IsMember({"basic", "memory", "lookahead", "avg-aut", "multi-aut"}));
        app.add_option("--M", M, "beam width")->check(CLI::PositiveNumber);
        app.add_option("--lookahead-t", t, "look-ahead depth")->check(CLI::PositiveNumber);
        app.add_option("--bound-factor", bound_factor, "step bound N = factor * L")->check(CLI::PositiveNumber);
        app.add_option("--step-bound", step_bound, "explicit step bound N (overrides --bound-factor)");
        app.add_flag("--no-repetition-filter", no_filter, "disable the visited set (always off for basic)");
        app.add_option("--halting", halting, "exact | alt-membership | alt-key")
            ->check(CLI::IsMember({"exact", "alt-membership", "alt-key"}));
        app.add_option("--phi-size", phi_size, "number of conjugators for the automorphism variants");
        app.add_option("--conjugator-length", conjugator_length, "normal-form length of each conjugator");
        app.add_option("--tie-break", tie_break, "remainder-key | generator-order | hashed")
            ->check(CLI::IsMember({"remainder-key", "generator-order", "hashed"}));
    }

    tlab::AttackSettings settings() const {
        tlab::AttackSettings a;
        a.variant = tlab::variant_from_string(variant);
        a.M = M;
        a.t = t;
        a.bound_factor = bound_factor;
        if (step_bound > 0) a.step_bound = step_bound;
        a.repetition_filter = a.variant != tlab::Variant::Basic && !no_filter;
        a.halting = tlab::halting_from_string(halting);
        a.phi_size = phi_size;
        a.conjugator_length = conjugator_length;
        a.tie_break = tlab::tie_break_from_string(tie_break);
        a.validate();
        return a;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

int run_regress(const std::string& cell_id, int trials, std::uint64_t seed, int jobs) {
    std::vector<tlab::RegressionCase> cases;
    if (cell_id.empty()) {
        cases = tlab::desk_regression_suite();
    } else {
        const auto& c = tlab::published_cell(cell_id);
        cases.push_back({&c, c.row, tlab::Tolerance{}, 1000});
    }
    bool all_ok = true;
    for (auto& rc : cases) {
        tlab::ExperimentSpec spec;
        spec.params = {rc.cell->s, rc.cell->L};
        spec.attack = rc.cell->attack;
        spec.trials = trials > 0 ? trials : rc.trials;
        spec.master_seed = seed;
        spec.jobs = jobs;
        const auto start = std::chrono::steady_clock::now();
        const auto outcome = tlab::run_experiment(spec);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const auto cmp = tlab::compare_reference(outcome.table, rc.row, rc.tolerance);
        std::printf("%s %s (%llu trials, %.1fs)\n", cmp.pass ? "PASS" : "FAIL", rc.row.id.c_str(),
                    static_cast<unsigned long long>(outcome.table.trials), secs);
        for (const auto& line : cmp.lines) std::printf("    %s\n", line.c_str());
        all_ok = all_ok && cmp.pass;
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Length-based attacks on a commuting-subgroup key agreement over Thompson's group F"};
    app.require_subcommand(1);

    int s = 3;
    int L = 32;
    std::uint64_t seed = 1;
    std::string out_path;
    int jobs = 1;
    int trials = 1000;
    std::string format = "csv";

    auto* keygen = app.add_subcommand("keygen", "generate a key-exchange instance as JSON");
    bool with_secrets = false;
    keygen->add_option("--s", s, "subgroup parameter")->check(CLI::Range(2, 64));
    keygen->add_option("--L", L, "normal-form length of every secret")->check(CLI::PositiveNumber);
    keygen->add_option("--seed", seed, "RNG seed");
    keygen->add_flag("--secrets", with_secrets, "include a1, b1, a2, b2 and K");
    keygen->add_option("--out", out_path, "output file (default stdout)");

    auto* attack = app.add_subcommand("attack", "attack the four equations of one instance");
    AttackOptions attack_opts;
    std::string instance_path;
    attack_opts.add_to(*attack);
    attack->add_option("--instance", instance_path, "instance JSON from keygen (needs secrets); default: fresh one");
    attack->add_option("--s", s, "subgroup parameter")->check(CLI::Range(2, 64));
    attack->add_option("--L", L, "secret length")->check(CLI::PositiveNumber);
    attack->add_option("--seed", seed, "RNG seed");
    attack->add_option("--out", out_path, "output file (default stdout)");

    auto* experiment = app.add_subcommand("experiment", "Monte-Carlo success-rate estimate");
    AttackOptions exp_opts;
    exp_opts.add_to(*experiment);
    experiment->add_option("--s", s, "subgroup parameter")->check(CLI::Range(2, 64));
    experiment->add_option("--L", L, "secret length (even)")->check(CLI::PositiveNumber);
    experiment->add_option("--trials", trials, "number of random instances")->check(CLI::PositiveNumber);
    experiment->add_option("--seed", seed, "master seed");
    experiment->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    experiment->add_option("--out", out_path, "output file (default stdout)");
    experiment->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* regress = app.add_subcommand("regress", "rerun published cells and compare");
    std::string cell_id;
    int regress_trials = 0;
    bool list_cells = false;
    regress->add_option("--cell", cell_id, "published cell id (default: the desk-scale suite)");
    regress->add_option("--trials", regress_trials, "override the trial count");
    regress->add_option("--seed", seed, "master seed");
    regress->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    regress->add_flag("--list", list_cells, "print the published cells and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (keygen->parsed()) {
            tlab::RandomStream rng(seed);
            const auto inst = tlab::generate_instance({s, L}, rng);
            write_output(out_path, tlab::instance_to_json(inst, with_secrets) + "\n");
            return 0;
        }

        if (attack->parsed()) {
            tlab::KeyExchangeInstance inst;
            tlab::RandomStream rng(seed);
            if (instance_path.empty()) {
                inst = tlab::generate_instance({s, L}, rng);
            } else {
                inst = tlab::instance_from_json(read_file(instance_path));
                if (inst.a1.is_identity() && inst.b1.is_identity() && inst.K.is_identity()) {
                    throw std::invalid_argument("instance has no secrets; regenerate it with keygen --secrets");
                }
            }
            tlab::ExperimentSpec spec;
            spec.params = {inst.s, inst.L};
            spec.attack = attack_opts.settings();
            std::vector<tlab::NormalForm> phi;
            if (spec.attack.phi_size > 0) {
                tlab::RandomStream conj = rng.split(1);
                phi = tlab::make_conjugator_set(spec.attack.phi_size, inst.s, conj, spec.attack.conjugator_length);
            }
            const auto rec = tlab::attack_instance(spec, inst, phi);
            std::ostringstream os;
            os << "{\"attack\":" << tlab::attack_settings_to_json(spec.attack, inst.L) << ",\"equations\":[";
            for (std::size_t i = 0; i < rec.equations.size(); ++i) {
                const auto& e = rec.equations[i];
                os << (i ? "," : "") << "{\"equation\":\"" << tlab::to_string(e.kind) << "\",\"success\":"
                   << (e.success ? "true" : "false") << ",\"kind\":\"" << tlab::to_string(e.success_kind)
                   << "\",\"steps_used\":" << e.steps_used << ",\"elements_scored\":" << e.elements_scored
                   << ",\"solution_verified\":" << (e.solution_verified ? "true" : "false") << "}";
            }
            os << "],\"total_success\":" << (rec.total_success ? "true" : "false") << "}\n";
            write_output(out_path, os.str());
            return 0;
        }

        if (experiment->parsed()) {
            tlab::ExperimentSpec spec;
            spec.params = {s, L};
            spec.attack = exp_opts.settings();
            spec.trials = trials;
            spec.master_seed = seed;
            spec.jobs = jobs;
            spec.output_format = format == "json" ? tlab::OutputFormat::Json : tlab::OutputFormat::Csv;
            const auto outcome = tlab::run_experiment(spec);
            write_output(out_path, tlab::emit(spec, outcome.table, outcome.log));
            if (outcome.table.aborted > 0) {
                std::fprintf(stderr, "warning: %llu trials aborted (sampling failed)\n",
                             static_cast<unsigned long long>(outcome.table.aborted));
            }
            return 0;
        }

        if (regress->parsed()) {
            if (list_cells) {
                for (const auto& c : tlab::published_cells()) {
                    std::printf("%-32s s=%d L=%d %s\n", c.row.id.c_str(), c.s, c.L,
                                tlab::attack_settings_to_json(c.attack, c.L).c_str());
                }
                return 0;
            }
            return run_regress(cell_id, regress_trials, seed, jobs);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
