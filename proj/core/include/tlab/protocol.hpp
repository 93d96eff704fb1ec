#pragma once

// Key agreement over F built on two commuting subgroups.
//
//   S_A = { x_0 x_1^-1, ..., x_0 x_s^-1 }   S_B = { x_{s+1}, ..., x_{2s} }
//   S_W = { x_0, ..., x_{s+2} }
//
// Alice publishes u1 = a1 w b1, Bob publishes u2 = b2 w a2, and both arrive at
// K = a1 u2 b1 = b2 u1 a2 because A and B commute elementwise.

#include <array>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "tlab/random.hpp"
#include "tlab/thompson.hpp"

namespace tlab {

enum class SubgroupId { A, B, W, WideW };

std::string_view to_string(SubgroupId id);

struct ProtocolParams {
    int s = 3;
    int L = 32;

    /// Throws std::invalid_argument unless s >= 2 and L >= 1.
    void validate() const;
};

class SamplingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Generators of the named subgroup. WideW is { x_0, ..., x_{2s} }, the set
/// random conjugators are drawn over.
std::vector<NormalForm> generator_set(SubgroupId id, int s);

/// Restart budget for sample_element.
inline constexpr int kMaxSampleRestarts = 1000;

/// Random walk from the identity over the signed generators of `id` until the
/// normal form has length exactly `length`. A walk that jumps past `length`
/// is discarded and restarted. Subgroup A needs an even length.
NormalForm sample_element(SubgroupId id, int s, int length, RandomStream& rng);

inline NormalForm sample_element(SubgroupId id, const ProtocolParams& params, RandomStream& rng) {
    return sample_element(id, params.s, params.L, rng);
}

struct KeyExchangeInstance {
    int s = 0;
    int L = 0;
    NormalForm w;
    NormalForm a1, b1, a2, b2;
    NormalForm u1, u2;
    NormalForm K;
};

KeyExchangeInstance generate_instance(const ProtocolParams& params, RandomStream& rng);

/// a u b. With a in A, b in B and a w b = u1 this reproduces the shared key.
NormalForm derive_shared_key(const NormalForm& a_tilde, const NormalForm& b_tilde, const NormalForm& u);

/// Which of the four public equations a view peels.
enum class EquationKind {
    U1,         // u1      = a1      w    b1
    U2,         // u2      = b2      w    a2
    U1Inverse,  // u1^-1   = b1^-1   w^-1 a1^-1
    U2Inverse,  // u2^-1   = a2^-1   w^-1 b2^-1
};

std::string_view to_string(EquationKind kind);

/// One equation z = left * w_core * right, as seen by the attacker, plus
/// harness-only ground truth.
struct EquationView {
    EquationKind kind = EquationKind::U1;
    int s = 0;
    NormalForm z;
    NormalForm w_core;
    std::vector<NormalForm> peel_gens;
    SubgroupId left_subgroup = SubgroupId::A;
    SubgroupId right_subgroup = SubgroupId::B;
    /// The public element of the other party (u2 for equations on u1 and vice versa).
    NormalForm other_public;

    std::optional<NormalForm> true_left;
    std::optional<NormalForm> true_right;
    std::optional<NormalForm> reference_key;

    bool recovers_a() const { return left_subgroup == SubgroupId::A; }

    /// Shared key implied by a decomposition z = left * w_core * right.
    NormalForm key_from(const NormalForm& left, const NormalForm& right) const;

    bool in_right_subgroup(const NormalForm& x) const;
};

std::array<EquationView, 4> four_equations(const KeyExchangeInstance& inst);

}  // namespace tlab
