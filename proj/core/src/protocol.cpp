#include "tlab/protocol.hpp"

#include <string>

namespace tlab {

std::string_view to_string(SubgroupId id) {
    switch (id) {
        case SubgroupId::A: return "A";
        case SubgroupId::B: return "B";
        case SubgroupId::W: return "W";
        case SubgroupId::WideW: return "W'";
    }
    return "?";
}

std::string_view to_string(EquationKind kind) {
    switch (kind) {
        case EquationKind::U1: return "u1";
        case EquationKind::U2: return "u2";
        case EquationKind::U1Inverse: return "u1^-1";
        case EquationKind::U2Inverse: return "u2^-1";
    }
    return "?";
}

void ProtocolParams::validate() const {
    if (s < 2) throw std::invalid_argument("s must be at least 2, got " + std::to_string(s));
    if (L < 1) throw std::invalid_argument("L must be positive, got " + std::to_string(L));
}

std::vector<NormalForm> generator_set(SubgroupId id, int s) {
    if (s < 2) throw std::invalid_argument("s must be at least 2, got " + std::to_string(s));
    const auto us = static_cast<Index>(s);
    std::vector<NormalForm> gens;
    switch (id) {
        case SubgroupId::A:
            for (Index i = 1; i <= us; ++i) gens.push_back(NormalForm::unchecked({0}, {i}));
            break;
        case SubgroupId::B:
            for (Index i = us + 1; i <= 2 * us; ++i) gens.push_back(NormalForm::generator(i));
            break;
        case SubgroupId::W:
            for (Index i = 0; i <= us + 2; ++i) gens.push_back(NormalForm::generator(i));
            break;
        case SubgroupId::WideW:
            for (Index i = 0; i <= 2 * us; ++i) gens.push_back(NormalForm::generator(i));
            break;
    }
    return gens;
}

NormalForm sample_element(SubgroupId id, int s, int length, RandomStream& rng) {
    if (length < 0) throw std::invalid_argument("sample length must be nonnegative");
    if (id == SubgroupId::A && length % 2 != 0) {
        throw std::invalid_argument("elements of A have even normal-form length; got L=" +
                                    std::to_string(length));
    }
    const auto gens = generator_set(id, s);
    std::vector<NormalForm> inverses;
    inverses.reserve(gens.size());
    for (const auto& g : gens) inverses.push_back(invert(g));

    const auto target = static_cast<std::size_t>(length);
    // A walk that has not settled after this many steps counts as a failed attempt.
    const std::size_t step_cap = 64 * target + 1024;

    for (int attempt = 0; attempt < kMaxSampleRestarts; ++attempt) {
        NormalForm cur;
        std::size_t steps = 0;
        while (cur.length() < target && steps < step_cap) {
            const auto pick = rng.below(gens.size());
            const bool inverted = rng.coin();
            cur = multiply(cur, inverted ? inverses[pick] : gens[pick]);
            ++steps;
        }
        if (cur.length() == target) return cur;
    }
    throw SamplingError("no element of length " + std::to_string(length) + " in subgroup " +
                        std::string(to_string(id)) + " after " + std::to_string(kMaxSampleRestarts) +
                        " restarts");
}

KeyExchangeInstance generate_instance(const ProtocolParams& params, RandomStream& rng) {
    params.validate();
    KeyExchangeInstance inst;
    inst.s = params.s;
    inst.L = params.L;
    inst.w = sample_element(SubgroupId::W, params, rng);
    inst.a1 = sample_element(SubgroupId::A, params, rng);
    inst.b1 = sample_element(SubgroupId::B, params, rng);
    inst.a2 = sample_element(SubgroupId::A, params, rng);
    inst.b2 = sample_element(SubgroupId::B, params, rng);
    inst.u1 = product(inst.a1, inst.w, inst.b1);
    inst.u2 = product(inst.b2, inst.w, inst.a2);
    inst.K = derive_shared_key(inst.a1, inst.b1, inst.u2);
    return inst;
}

NormalForm derive_shared_key(const NormalForm& a_tilde, const NormalForm& b_tilde, const NormalForm& u) {
    return product(a_tilde, u, b_tilde);
}

NormalForm EquationView::key_from(const NormalForm& left, const NormalForm& right) const {
    switch (kind) {
        case EquationKind::U1:
        case EquationKind::U2:
            return derive_shared_key(left, right, other_public);
        case EquationKind::U1Inverse:
        case EquationKind::U2Inverse:
            return derive_shared_key(invert(right), invert(left), other_public);
    }
    return {};
}

bool EquationView::in_right_subgroup(const NormalForm& x) const {
    return right_subgroup == SubgroupId::A ? is_in_A(x, s) : is_in_B(x, s);
}

std::array<EquationView, 4> four_equations(const KeyExchangeInstance& inst) {
    const auto gens_a = generator_set(SubgroupId::A, inst.s);
    const auto gens_b = generator_set(SubgroupId::B, inst.s);
    const auto w_inv = invert(inst.w);

    auto view = [&](EquationKind kind, NormalForm z, const NormalForm& core, SubgroupId left,
                    const NormalForm& other, NormalForm tl, NormalForm tr) {
        EquationView v;
        v.kind = kind;
        v.s = inst.s;
        v.z = std::move(z);
        v.w_core = core;
        v.left_subgroup = left;
        v.right_subgroup = left == SubgroupId::A ? SubgroupId::B : SubgroupId::A;
        v.peel_gens = left == SubgroupId::A ? gens_a : gens_b;
        v.other_public = other;
        v.true_left = std::move(tl);
        v.true_right = std::move(tr);
        v.reference_key = inst.K;
        return v;
    };

    return {
        view(EquationKind::U1, inst.u1, inst.w, SubgroupId::A, inst.u2, inst.a1, inst.b1),
        view(EquationKind::U2, inst.u2, inst.w, SubgroupId::B, inst.u1, inst.b2, inst.a2),
        view(EquationKind::U1Inverse, invert(inst.u1), w_inv, SubgroupId::B, inst.u2, invert(inst.b1),
             invert(inst.a1)),
        view(EquationKind::U2Inverse, invert(inst.u2), w_inv, SubgroupId::A, inst.u1, invert(inst.a2),
             invert(inst.b2)),
    };
}

}  // namespace tlab
