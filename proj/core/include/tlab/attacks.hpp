#pragma once

// Length-based attacks on z = x * w * y: repeatedly peel a signed generator h
// off the left of the current remainder (y <- h^-1 y), steering by a length
// function. Covers single-track peeling, beams of width M, a run-global
// visited set, look-ahead over generator tuples, inner-automorphism twisted
// lengths, and halting on alternative decompositions.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "tlab/protocol.hpp"
#include "tlab/random.hpp"
#include "tlab/thompson.hpp"

namespace tlab {

/// Exact rational total / count.
struct Score {
    std::int64_t total = 0;
    std::int64_t count = 1;

    friend std::strong_ordering operator<=>(const Score& a, const Score& b) {
        return a.total * b.count <=> b.total * a.count;
    }
    friend bool operator==(const Score& a, const Score& b) { return (a <=> b) == 0; }

    double value() const { return static_cast<double>(total) / static_cast<double>(count); }
};

class LengthFunction {
public:
    enum class Mode { Plain, Conjugated, Averaged };

    LengthFunction() = default;

    static LengthFunction plain() { return {}; }
    /// w -> l_NF(g^-1 w g)
    static LengthFunction conjugated(NormalForm g);
    /// w -> mean over g in phi of l_NF(g^-1 w g). phi must be nonempty.
    static LengthFunction averaged(std::vector<NormalForm> phi);

    Score operator()(const NormalForm& y) const;

    Mode mode() const { return mode_; }
    const std::vector<NormalForm>& conjugators() const { return conj_; }

private:
    Mode mode_ = Mode::Plain;
    std::vector<NormalForm> conj_;
    std::vector<NormalForm> conj_inv_;
};

std::string_view to_string(LengthFunction::Mode mode);

enum class Halting { ExactOnly, AltMembership, AltKeyOracle };

std::string_view to_string(Halting h);
Halting halting_from_string(std::string_view s);

/// Ordering among equal scores.
enum class TieBreak {
    RemainderKey,    // canonical key of the remainder, then generator id, then beam slot
    GeneratorOrder,  // generator id, then beam slot
    Hashed,          // seeded hash of the remainder, then generator id, then beam slot
};

std::string_view to_string(TieBreak t);
TieBreak tie_break_from_string(std::string_view s);

struct AttackConfig {
    int M = 1;
    int lookahead_t = 1;
    int step_bound = 1;
    bool repetition_filter = false;
    Halting halting = Halting::ExactOnly;
    LengthFunction length_fn;
    TieBreak tie_break = TieBreak::RemainderKey;
    std::uint64_t tie_seed = 0;
    /// At most this many prefixes are kept in AttackResult::candidates.
    std::size_t candidate_cap = 256;

    void validate() const;
};

enum class SuccessKind { None, Exact, Alternative };

std::string_view to_string(SuccessKind k);

struct BeamEntry {
    NormalForm remainder;  // prefix^-1 z
    NormalForm prefix;     // h_1 ... h_k
    std::vector<std::uint16_t> path;  // generator ids: 2*i for peel_gens[i], 2*i+1 for its inverse
    Score score;
};

struct AttackResult {
    bool success = false;
    SuccessKind kind = SuccessKind::None;
    std::optional<std::pair<NormalForm, NormalForm>> solution;
    int steps_used = 0;
    std::uint64_t elements_scored = 0;
    /// Number of single-track runs performed (greater than one only for multiple_attack).
    int runs = 1;
    std::vector<NormalForm> candidates;
};

/// Optional instrumentation for tests and tooling.
struct AttackTrace {
    /// Every remainder handed to the scorer as a beam child.
    std::function<void(const NormalForm& remainder)> on_scored;
    /// After selection: the kept entries and the scores of every discarded child.
    std::function<void(int step, std::span<const BeamEntry> kept, std::span<const Score> discarded)> on_step;
};

/// Beam search with cfg.M tracks. Requires cfg.lookahead_t == 1.
AttackResult beam_attack(const EquationView& eq, const AttackConfig& cfg, const AttackTrace* trace = nullptr);

/// Each child h^-1 y is scored by the best of its (2k)^(t-1) continuations, so
/// (2k)^t tuples are scored per beam entry per step; the beam advances by the
/// first generator of the leading tuples.
AttackResult lookahead_attack(const EquationView& eq, const AttackConfig& cfg, const AttackTrace* trace = nullptr);

/// Beam width with the same per-step cost as look-ahead depth t.
inline std::uint64_t lookahead_equivalent_width(std::uint64_t k, int t) {
    std::uint64_t m = 1;
    for (int i = 1; i < t; ++i) m *= 2 * k;
    return m;
}

/// m random elements of normal-form length `length` over { x_0, ..., x_{2s} }.
std::vector<NormalForm> make_conjugator_set(int m, int s, RandomStream& rng, int length = 64);

/// Reruns the attack with conjugated(g) for each g in phi until one succeeds.
AttackResult multiple_attack(const EquationView& eq, std::span<const NormalForm> phi, const AttackConfig& base_cfg);

/// Complement b~ = w_core^-1 a~^-1 z of a candidate prefix, accepted per mode.
/// ExactOnly never accepts. AltKeyOracle needs eq.reference_key.
std::optional<std::pair<NormalForm, NormalForm>> check_alternative(const NormalForm& a_tilde, const EquationView& eq,
                                                                   Halting mode);

bool evaluate_exact_success(std::span<const NormalForm> candidates, const NormalForm& true_left);

}  // namespace tlab
