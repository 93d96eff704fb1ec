#include "tlab/attacks.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace tlab {

LengthFunction LengthFunction::conjugated(NormalForm g) {
    LengthFunction f;
    f.mode_ = Mode::Conjugated;
    f.conj_inv_.push_back(invert(g));
    f.conj_.push_back(std::move(g));
    return f;
}

LengthFunction LengthFunction::averaged(std::vector<NormalForm> phi) {
    if (phi.empty()) throw std::invalid_argument("averaged length needs at least one conjugator");
    LengthFunction f;
    f.mode_ = Mode::Averaged;
    for (const auto& g : phi) f.conj_inv_.push_back(invert(g));
    f.conj_ = std::move(phi);
    return f;
}

Score LengthFunction::operator()(const NormalForm& y) const {
    if (mode_ == Mode::Plain) return {static_cast<std::int64_t>(y.length()), 1};
    std::int64_t total = 0;
    for (std::size_t i = 0; i < conj_.size(); ++i) {
        total += static_cast<std::int64_t>(multiply(multiply(conj_inv_[i], y), conj_[i]).length());
    }
    return {total, static_cast<std::int64_t>(conj_.size())};
}

std::string_view to_string(LengthFunction::Mode mode) {
    switch (mode) {
        case LengthFunction::Mode::Plain: return "plain";
        case LengthFunction::Mode::Conjugated: return "conjugated";
        case LengthFunction::Mode::Averaged: return "averaged";
    }
    return "?";
}

std::string_view to_string(Halting h) {
    switch (h) {
        case Halting::ExactOnly: return "exact";
        case Halting::AltMembership: return "alt-membership";
        case Halting::AltKeyOracle: return "alt-key";
    }
    return "?";
}

Halting halting_from_string(std::string_view s) {
    if (s == "exact") return Halting::ExactOnly;
    if (s == "alt-membership") return Halting::AltMembership;
    if (s == "alt-key") return Halting::AltKeyOracle;
    throw std::invalid_argument("unknown halting mode '" + std::string(s) + "'");
}

std::string_view to_string(TieBreak t) {
    switch (t) {
        case TieBreak::RemainderKey: return "remainder-key";
        case TieBreak::GeneratorOrder: return "generator-order";
        case TieBreak::Hashed: return "hashed";
    }
    return "?";
}

TieBreak tie_break_from_string(std::string_view s) {
    if (s == "remainder-key") return TieBreak::RemainderKey;
    if (s == "generator-order") return TieBreak::GeneratorOrder;
    if (s == "hashed") return TieBreak::Hashed;
    throw std::invalid_argument("unknown tie-break rule '" + std::string(s) + "'");
}

std::string_view to_string(SuccessKind k) {
    switch (k) {
        case SuccessKind::None: return "none";
        case SuccessKind::Exact: return "exact";
        case SuccessKind::Alternative: return "alternative";
    }
    return "?";
}

void AttackConfig::validate() const {
    if (M < 1) throw std::invalid_argument("beam width M must be positive");
    if (lookahead_t < 1) throw std::invalid_argument("look-ahead depth t must be positive");
    if (step_bound < 1) throw std::invalid_argument("step bound N must be positive");
}

namespace {

struct SignedGen {
    std::uint16_t id;
    NormalForm h;      // the generator peeled off
    NormalForm h_inv;  // what gets multiplied onto the remainder
};

std::vector<SignedGen> signed_generators(std::span<const NormalForm> gens) {
    std::vector<SignedGen> out;
    out.reserve(2 * gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto id = static_cast<std::uint16_t>(2 * i);
        out.push_back({id, gens[i], invert(gens[i])});
        out.push_back({static_cast<std::uint16_t>(id + 1), invert(gens[i]), gens[i]});
    }
    return out;
}

struct Child {
    std::size_t parent;
    std::uint16_t gen;
    NormalForm remainder;
    Score score;
    std::uint64_t priority = 0;
};

std::optional<std::pair<NormalForm, NormalForm>> accept_complement(const NormalForm& a_tilde, NormalForm b_tilde,
                                                                   const EquationView& eq, Halting mode) {
    switch (mode) {
        case Halting::ExactOnly:
            return std::nullopt;
        case Halting::AltMembership:
            if (!eq.in_right_subgroup(b_tilde)) return std::nullopt;
            break;
        case Halting::AltKeyOracle:
            if (!eq.reference_key) throw std::invalid_argument("key-oracle halting needs a reference key");
            if (eq.key_from(a_tilde, b_tilde) != *eq.reference_key) return std::nullopt;
            break;
    }
    return std::make_pair(a_tilde, std::move(b_tilde));
}

class Search {
public:
    Search(const EquationView& eq, const AttackConfig& cfg, const AttackTrace* trace)
        : eq_(eq), cfg_(cfg), trace_(trace), gens_(signed_generators(eq.peel_gens)), w_core_inv_(invert(eq.w_core)) {}

    AttackResult run() {
        if (gens_.empty()) throw std::invalid_argument("equation has no peel generators");
        cfg_.validate();

        BeamEntry root{eq_.z, NormalForm::identity(), {}, cfg_.length_fn(eq_.z)};
        if (cfg_.repetition_filter) visited_.insert(fingerprint(root.remainder));
        std::vector<BeamEntry> beam;
        beam.push_back(std::move(root));
        if (admit(beam.front())) return std::move(result_);

        std::vector<Child> children;
        std::vector<std::size_t> order;
        std::vector<Score> discarded;
        for (int step = 1; step <= cfg_.step_bound; ++step) {
            children.clear();
            for (std::size_t ei = 0; ei < beam.size(); ++ei) {
                for (const auto& g : gens_) {
                    NormalForm y = multiply(g.h_inv, beam[ei].remainder);
                    if (cfg_.repetition_filter && !visited_.insert(fingerprint(y)).second) continue;
                    if (trace_ && trace_->on_scored) trace_->on_scored(y);
                    Score sc = score(y, cfg_.lookahead_t - 1);
                    std::uint64_t prio = 0;
                    if (cfg_.tie_break == TieBreak::Hashed) {
                        const Fingerprint f = fingerprint(y);
                        prio = f.hi ^ (f.lo * 0x9e3779b97f4a7c15ULL) ^ cfg_.tie_seed;
                    }
                    children.push_back({ei, g.id, std::move(y), sc, prio});
                }
            }
            if (children.empty()) break;

            order.resize(children.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(cfg_.M), children.size());
            auto better = [&](std::size_t l, std::size_t r) { return precedes(children[l], children[r]); };
            std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(), better);

            std::vector<BeamEntry> next;
            next.reserve(keep);
            for (std::size_t n = 0; n < keep; ++n) {
                Child& c = children[order[n]];
                const BeamEntry& parent = beam[c.parent];
                BeamEntry e;
                e.prefix = multiply(parent.prefix, gens_[c.gen].h);
                e.path = parent.path;
                e.path.push_back(c.gen);
                e.remainder = std::move(c.remainder);
                e.score = c.score;
                next.push_back(std::move(e));
            }
            if (trace_ && trace_->on_step) {
                discarded.clear();
                for (std::size_t n = keep; n < order.size(); ++n) discarded.push_back(children[order[n]].score);
                trace_->on_step(step, next, discarded);
            }
            beam = std::move(next);
            result_.steps_used = step;
            for (const auto& e : beam) {
                if (admit(e)) return std::move(result_);
            }
        }
        return std::move(result_);
    }

private:
    // Best score over all continuations of the given depth.
    Score score(const NormalForm& y, int depth) {
        if (depth == 0) {
            ++result_.elements_scored;
            return cfg_.length_fn(y);
        }
        std::optional<Score> best;
        for (const auto& g : gens_) {
            Score s = score(multiply(g.h_inv, y), depth - 1);
            if (!best || s < *best) best = s;
        }
        return *best;
    }

    bool precedes(const Child& l, const Child& r) const {
        if (auto c = l.score <=> r.score; c != 0) return c < 0;
        if (cfg_.tie_break == TieBreak::RemainderKey) {
            if (auto c = canonical_compare(l.remainder, r.remainder); c != 0) return c < 0;
        }
        if (cfg_.tie_break == TieBreak::Hashed) {
            if (l.priority != r.priority) return l.priority < r.priority;
        }
        if (l.gen != r.gen) return l.gen < r.gen;
        return l.parent < r.parent;
    }

    // Records a beam entry and reports whether the run halts on it.
    bool admit(const BeamEntry& e) {
        if (result_.candidates.size() < cfg_.candidate_cap) result_.candidates.push_back(e.prefix);
        if (eq_.true_left && e.prefix == *eq_.true_left) {
            result_.success = true;
            result_.kind = SuccessKind::Exact;
            result_.solution.emplace(e.prefix, multiply(w_core_inv_, e.remainder));
            return true;
        }
        if (cfg_.halting == Halting::ExactOnly) return false;
        auto alt = accept_complement(e.prefix, multiply(w_core_inv_, e.remainder), eq_, cfg_.halting);
        if (!alt) return false;
        result_.success = true;
        result_.kind = SuccessKind::Alternative;
        result_.solution = std::move(alt);
        return true;
    }

    const EquationView& eq_;
    const AttackConfig& cfg_;
    const AttackTrace* trace_;
    std::vector<SignedGen> gens_;
    NormalForm w_core_inv_;
    std::unordered_set<Fingerprint, FingerprintHash> visited_;
    AttackResult result_;
};

}  // namespace

AttackResult beam_attack(const EquationView& eq, const AttackConfig& cfg, const AttackTrace* trace) {
    if (cfg.lookahead_t != 1) throw std::invalid_argument("beam_attack expects lookahead_t == 1");
    return Search(eq, cfg, trace).run();
}

AttackResult lookahead_attack(const EquationView& eq, const AttackConfig& cfg, const AttackTrace* trace) {
    return Search(eq, cfg, trace).run();
}

std::vector<NormalForm> make_conjugator_set(int m, int s, RandomStream& rng, int length) {
    if (m < 1) throw std::invalid_argument("conjugator set size must be positive");
    std::vector<NormalForm> phi;
    phi.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) phi.push_back(sample_element(SubgroupId::WideW, s, length, rng));
    return phi;
}

AttackResult multiple_attack(const EquationView& eq, std::span<const NormalForm> phi, const AttackConfig& base_cfg) {
    if (phi.empty()) throw std::invalid_argument("multiple attack needs at least one conjugator");
    AttackResult total;
    total.runs = 0;
    for (const auto& g : phi) {
        AttackConfig cfg = base_cfg;
        cfg.length_fn = LengthFunction::conjugated(g);
        AttackResult r = lookahead_attack(eq, cfg);
        total.runs += 1;
        total.elements_scored += r.elements_scored;
        total.steps_used += r.steps_used;
        for (auto& c : r.candidates) {
            if (total.candidates.size() >= base_cfg.candidate_cap) break;
            total.candidates.push_back(std::move(c));
        }
        if (r.success) {
            total.success = true;
            total.kind = r.kind;
            total.solution = std::move(r.solution);
            break;
        }
    }
    return total;
}

std::optional<std::pair<NormalForm, NormalForm>> check_alternative(const NormalForm& a_tilde, const EquationView& eq,
                                                                   Halting mode) {
    NormalForm b_tilde = product(invert(eq.w_core), invert(a_tilde), eq.z);
    return accept_complement(a_tilde, std::move(b_tilde), eq, mode);
}

bool evaluate_exact_success(std::span<const NormalForm> candidates, const NormalForm& true_left) {
    return std::any_of(candidates.begin(), candidates.end(),
                       [&](const NormalForm& c) { return c == true_left; });
}

}  // namespace tlab
