#include <cmath>

#include "doctest.h"
#include "tlab/harness.hpp"
#include "tlab/reference.hpp"

using namespace tlab;

namespace {

ExperimentSpec small_spec(int L, int trials, std::uint64_t seed = 1) {
    ExperimentSpec s;
    s.params = {3, L};
    s.trials = trials;
    s.master_seed = seed;
    return s;
}

TrialRecord synthetic(bool a1, bool b2, bool b1, bool a2) {
    TrialRecord r;
    r.equations[0].success = a1;
    r.equations[1].success = b2;
    r.equations[2].success = b1;
    r.equations[3].success = a2;
    r.a_recovered = a1 || a2;
    r.b_recovered = b1 || b2;
    r.total_success = r.a_recovered || r.b_recovered;
    return r;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("total-rate formula") {
    CHECK(total_rate(0.102, 0.082) == doctest::Approx(0.3205).epsilon(0.0005 / 0.3205));
    CHECK(total_rate(0.0, 0.0) == 0.0);
    CHECK(total_rate(1.0, 0.3) == 1.0);
    CHECK(total_rate(0.884, 0.826) == doctest::Approx(0.9996).epsilon(1e-4));
}

TEST_CASE("summaries of synthetic logs") {
    const auto spec = small_spec(8, 4);
    std::vector<TrialRecord> all_ok(4, synthetic(true, true, true, true));
    auto t = summarize(spec, all_ok);
    CHECK(t.p_a == 1.0);
    CHECK(t.p_b == 1.0);
    CHECK(t.total_formula == 1.0);
    CHECK(t.total_empirical == 1.0);

    std::vector<TrialRecord> none(4, synthetic(false, false, false, false));
    t = summarize(spec, none);
    CHECK(t.p_a == 0.0);
    CHECK(t.total_formula == 0.0);

    std::vector<TrialRecord> mixed{synthetic(true, false, false, false), synthetic(false, false, false, true),
                                   synthetic(false, true, false, false), synthetic(false, false, false, false)};
    TrialRecord aborted;
    aborted.aborted = true;
    mixed.push_back(aborted);
    t = summarize(spec, mixed);
    CHECK(t.trials == 4);
    CHECK(t.aborted == 1);
    CHECK(t.a_attempts == 8);
    CHECK(t.p_a == doctest::Approx(2.0 / 8));
    CHECK(t.p_b == doctest::Approx(1.0 / 8));
    CHECK(t.p_a_trial == doctest::Approx(2.0 / 4));
    CHECK(t.p_b_trial == doctest::Approx(1.0 / 4));
    CHECK(t.total_empirical == doctest::Approx(3.0 / 4));
    CHECK(t.total_formula == doctest::Approx(total_rate(0.25, 0.125)));
    CHECK(t.ci_a == doctest::Approx(binomial_half_width(0.25, 8)));
}

TEST_CASE("CSV layout") {
    auto spec = small_spec(4, 10);
    const auto out = run_experiment(spec);
    const std::string csv = emit_csv(out.table);
    CHECK(csv.rfind("L,M,t,phi,p_a,p_b,total_formula,total_empirical,ci_a,ci_b,trials\n", 0) == 0);
    CHECK(csv.find("\n4,1,1,0,") != std::string::npos);
    CHECK(csv.back() == '\n');
}

TEST_CASE("reference comparison") {
    SummaryTable t;
    t.p_a = 0.884;
    t.p_b = 0.826;
    t.total_formula = total_rate(t.p_a, t.p_b);
    const ReferenceRow row{"basic/L=4", 0.884, 0.826, 0.9996};
    CHECK(compare_reference(t, row, {}).pass);
    t.p_a = 0.50;
    const auto cmp = compare_reference(t, row, {});
    CHECK_FALSE(cmp.pass);
    CHECK(cmp.lines.size() == 3);
    CHECK_THROWS_AS(compare_reference(t, ReferenceRow{"bad", 1.5, {}, {}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(compare_reference(t, ReferenceRow{"empty", {}, {}, {}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(compare_reference(t, row, Tolerance{-0.1, 0.1, 0.1}), std::invalid_argument);
    // Columns that are absent are not compared.
    CHECK(compare_reference(t, ReferenceRow{"b only", {}, 0.826, {}}, {}).pass);
}

TEST_CASE("toy case always succeeds") {
    auto spec = small_spec(2, 30);
    spec.attack.variant = Variant::Memory;
    spec.attack.M = 6;
    const auto out = run_experiment(spec);
    for (const auto& rec : out.log) {
        REQUIRE_FALSE(rec.aborted);
        CHECK(rec.total_success);
        CHECK(rec.a_recovered);
    }
}

TEST_CASE("trials are reproducible and independent of worker count") {
    auto spec = small_spec(8, 40, 99);
    spec.attack.variant = Variant::Memory;
    spec.attack.M = 3;
    spec.attack.repetition_filter = true;
    spec.attack.halting = Halting::AltMembership;
    spec.output_format = OutputFormat::Json;
    const auto one = run_experiment(spec);
    spec.jobs = 4;
    const auto four = run_experiment(spec);
    CHECK(emit(spec, one.table, one.log) == emit(spec, four.table, four.log));
    const auto again = run_trial(spec, 7);
    CHECK(again.total_success == one.log[7].total_success);
    CHECK(again.equations[0].steps_used == one.log[7].equations[0].steps_used);
}

TEST_CASE("recorded successes verify") {
    auto spec = small_spec(8, 30, 5);
    spec.attack.variant = Variant::Memory;
    spec.attack.M = 4;
    spec.attack.repetition_filter = true;
    spec.attack.halting = Halting::AltMembership;
    const auto out = run_experiment(spec);
    int successes = 0;
    for (const auto& rec : out.log) {
        for (const auto& e : rec.equations) {
            if (!e.success) continue;
            ++successes;
            CHECK(e.solution_verified);
        }
        CHECK(rec.total_success == (rec.a_recovered || rec.b_recovered));
    }
    CHECK(successes > 0);
}

TEST_CASE("attack settings") {
    AttackSettings a;
    CHECK(a.N(32) == 64);
    a.step_bound = 10;
    CHECK(a.N(32) == 10);
    a.variant = Variant::Basic;
    a.M = 4;
    CHECK_THROWS_AS(a.validate(), std::invalid_argument);
    a.variant = Variant::AvgAut;
    CHECK_THROWS_AS(a.validate(), std::invalid_argument);
    a.phi_size = 8;
    CHECK_NOTHROW(a.validate());
    CHECK(a.length_mode() == LengthFunction::Mode::Averaged);

    const auto json = attack_settings_to_json(a, 32);
    const auto back = attack_settings_from_json(json);
    CHECK(back.variant == a.variant);
    CHECK(back.M == 4);
    CHECK(back.N(32) == 10);
    CHECK(back.phi_size == 8);
    CHECK(attack_settings_to_json(back, 32) == json);
    CHECK_THROWS_AS(attack_settings_from_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(attack_settings_from_json(R"({"variant":"basic","length_mode":"averaged"})"),
                    std::invalid_argument);

    auto spec = small_spec(5, 1);
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("published cells") {
    CHECK(published_cells().size() > 20);
    const auto& c = published_cell("basic/L=32");
    CHECK(c.row.p_a == doctest::Approx(0.102));
    CHECK(c.row.p_b == doctest::Approx(0.082));
    CHECK_THROWS_AS(published_cell("nope"), std::out_of_range);
    for (const auto& cell : published_cells()) {
        for (const auto& v : {cell.row.p_a, cell.row.p_b, cell.row.total}) {
            if (v) CHECK((*v >= 0.0 && *v <= 1.0));
        }
        CHECK_NOTHROW(cell.attack.validate());
    }
    const auto suite = desk_regression_suite();
    REQUIRE(suite.size() == 3);
    CHECK(suite[0].tolerance.p_a == doctest::Approx(0.030));
    CHECK(suite[0].tolerance.p_b == doctest::Approx(0.035));
    CHECK_FALSE(suite[0].row.total.has_value());
}

}  // TEST_SUITE
