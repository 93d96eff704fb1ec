#include "tlab/thompson.hpp"

#include <algorithm>
#include <stdexcept>

namespace tlab {

namespace {

constexpr std::uint32_t kKeySentinel = 0xFFFFFFFFu;

// U.V for sorted positive words U, V. An x_v passing x_u (u > v) leftwards
// turns it into x_{u+1}.
std::vector<Index> merge_positive(std::span<const Index> u, std::span<const Index> v) {
    std::vector<Index> out;
    out.reserve(u.size() + v.size());
    std::size_t i = 0, j = 0;
    Index passed = 0;
    while (i < u.size() && j < v.size()) {
        if (v[j] < u[i] + passed) {
            out.push_back(v[j++]);
            ++passed;
        } else {
            out.push_back(u[i++] + passed);
        }
    }
    for (; i < u.size(); ++i) out.push_back(u[i] + passed);
    for (; j < v.size(); ++j) out.push_back(v[j]);
    return out;
}

// Rewrites N^-1 P (N, P sorted positive words) as P' N'^-1.
void cross(std::span<const Index> n, std::span<const Index> p,
           std::vector<Index>& out_pos, std::vector<Index>& out_neg) {
    out_pos.reserve(p.size());
    out_neg.reserve(n.size());
    std::size_t i = 0, k = 0;
    Index emitted = 0;    // positive atoms already moved to the left of every remaining inverse
    Index finalized = 0;  // inverse atoms every remaining positive atom has passed
    while (i < n.size() && k < p.size()) {
        const Index a = p[k] + finalized;
        const Index b = n[i] + emitted;
        if (a > b) {
            out_neg.push_back(b);
            ++i;
            ++finalized;
        } else if (a < b) {
            out_pos.push_back(a);
            ++k;
            ++emitted;
        } else {
            ++i;
            ++k;
        }
    }
    for (; k < p.size(); ++k) out_pos.push_back(p[k] + finalized);
    for (; i < n.size(); ++i) out_neg.push_back(n[i] + emitted);
}

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

}  // namespace

NormalForm NormalForm::from_parts(std::vector<Index> pos, std::vector<Index> neg) {
    if (!is_normal(pos, neg)) {
        throw std::invalid_argument("index lists do not form a normal form");
    }
    return unchecked(std::move(pos), std::move(neg));
}

Word NormalForm::atoms() const {
    Word w;
    w.reserve(length());
    for (Index i : pos_) w.push_back(Atom::gen(i));
    for (auto it = neg_.rbegin(); it != neg_.rend(); ++it) w.push_back(Atom::inv(*it));
    return w;
}

namespace detail {

// Cancellation pass. A pair x_i ... x_i^-1 with no x_{i+1}^{+-1} present is
// removed and every index above i drops by one. Removals at i can only spoil
// pairs at i-1, so one sweep from the top reaches the fixpoint. Entries already
// swept are all above the current index and every later removal lowers them
// uniformly, so their final value is original - (removals after emission).
void reduce_seminormal(std::vector<Index>& pos, std::vector<Index>& neg) {
    if (pos.empty() || neg.empty()) return;

    struct Emitted {
        Index original;
        std::uint64_t removals_before;
    };
    std::vector<Emitted> out_pos, out_neg;
    out_pos.reserve(pos.size());
    out_neg.reserve(neg.size());

    std::uint64_t removals = 0;
    bool have_last = false;
    Emitted last{};

    std::size_t ip = pos.size(), in = neg.size();
    while (ip > 0 || in > 0) {
        Index v = 0;
        if (ip > 0) v = pos[ip - 1];
        if (in > 0) v = std::max(v, neg[in - 1]);

        std::size_t cp = 0, cn = 0;
        while (ip > 0 && pos[ip - 1] == v) { --ip; ++cp; }
        while (in > 0 && neg[in - 1] == v) { --in; ++cn; }

        while (cp > 0 && cn > 0) {
            const bool successor_present =
                have_last && last.original - (removals - last.removals_before) == std::uint64_t{v} + 1;
            if (successor_present) break;
            --cp;
            --cn;
            ++removals;
        }
        for (std::size_t c = 0; c < cp; ++c) out_pos.push_back({v, removals});
        for (std::size_t c = 0; c < cn; ++c) out_neg.push_back({v, removals});
        if (cp + cn > 0) {
            have_last = true;
            last = {v, removals};
        }
    }

    if (removals == 0) return;

    auto rebuild = [removals](std::vector<Index>& dst, const std::vector<Emitted>& src) {
        dst.clear();
        for (auto it = src.rbegin(); it != src.rend(); ++it) {
            dst.push_back(static_cast<Index>(it->original - (removals - it->removals_before)));
        }
    };
    rebuild(pos, out_pos);
    rebuild(neg, out_neg);
}

}  // namespace detail

NormalForm multiply(const NormalForm& a, const NormalForm& b) {
    if (a.is_identity()) return b;
    if (b.is_identity()) return a;

    std::vector<Index> mid_pos, mid_neg;
    cross(a.neg(), b.pos(), mid_pos, mid_neg);

    std::vector<Index> pos = mid_pos.empty() ? a.pos() : merge_positive(a.pos(), mid_pos);
    std::vector<Index> neg = mid_neg.empty() ? b.neg() : merge_positive(b.neg(), mid_neg);
    detail::reduce_seminormal(pos, neg);
    return NormalForm::unchecked(std::move(pos), std::move(neg));
}

NormalForm invert(const NormalForm& a) {
    return NormalForm::unchecked(a.neg(), a.pos());
}

NormalForm normalize(std::span<const Atom> word) {
    if (word.empty()) return NormalForm::identity();
    if (word.size() == 1) {
        const Atom& at = word.front();
        return at.inverse ? NormalForm::generator_inverse(at.index) : NormalForm::generator(at.index);
    }
    const std::size_t half = word.size() / 2;
    return multiply(normalize(word.first(half)), normalize(word.subspan(half)));
}

NormalForm conjugate(const NormalForm& a, const NormalForm& g) {
    return multiply(multiply(invert(g), a), g);
}

std::string canonical_key(const NormalForm& a) {
    std::string key;
    key.reserve(4 * (a.length() + 3));
    auto put = [&key](std::uint32_t v) {
        key.push_back(static_cast<char>((v >> 24) & 0xFF));
        key.push_back(static_cast<char>((v >> 16) & 0xFF));
        key.push_back(static_cast<char>((v >> 8) & 0xFF));
        key.push_back(static_cast<char>(v & 0xFF));
    };
    put(static_cast<std::uint32_t>(a.pos().size()));
    for (Index i : a.pos()) put(i);
    put(kKeySentinel);
    put(static_cast<std::uint32_t>(a.neg().size()));
    for (Index j : a.neg()) put(j);
    return key;
}

std::strong_ordering canonical_compare(const NormalForm& a, const NormalForm& b) {
    if (auto c = a.pos().size() <=> b.pos().size(); c != 0) return c;
    if (auto c = std::lexicographical_compare_three_way(a.pos().begin(), a.pos().end(),
                                                        b.pos().begin(), b.pos().end());
        c != 0) {
        return c;
    }
    if (auto c = a.neg().size() <=> b.neg().size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.neg().begin(), a.neg().end(),
                                                  b.neg().begin(), b.neg().end());
}

Fingerprint fingerprint(const NormalForm& a) {
    std::uint64_t hi = 0x243f6a8885a308d3ULL;
    std::uint64_t lo = 0x13198a2e03707344ULL;
    auto feed = [&](std::uint64_t v) {
        hi = mix64(hi ^ (v + 0x9e3779b97f4a7c15ULL));
        lo = mix64((lo + v) * 0xd6e8feb86659fd93ULL + 0xa4093822299f31d0ULL);
    };
    feed(a.pos().size());
    for (Index i : a.pos()) feed(i);
    feed(kKeySentinel);
    feed(a.neg().size());
    for (Index j : a.neg()) feed(j);
    return {hi, lo};
}

bool is_normal(std::span<const Index> pos, std::span<const Index> neg) {
    if (!std::is_sorted(pos.begin(), pos.end()) || !std::is_sorted(neg.begin(), neg.end())) {
        return false;
    }
    auto present = [&](Index v) {
        return std::binary_search(pos.begin(), pos.end(), v) ||
               std::binary_search(neg.begin(), neg.end(), v);
    };
    std::size_t i = 0, j = 0;
    while (i < pos.size() && j < neg.size()) {
        if (pos[i] < neg[j]) {
            ++i;
        } else if (neg[j] < pos[i]) {
            ++j;
        } else {
            if (!present(pos[i] + 1)) return false;
            const Index v = pos[i];
            while (i < pos.size() && pos[i] == v) ++i;
            while (j < neg.size() && neg[j] == v) ++j;
        }
    }
    return true;
}

bool is_in_A(const NormalForm& a, int s) {
    if (a.pos().size() != a.neg().size()) return false;
    const auto limit = [s](std::size_t k) { return static_cast<std::int64_t>(s) + static_cast<std::int64_t>(k); };
    for (std::size_t k = 1; k <= a.pos().size(); ++k) {
        if (static_cast<std::int64_t>(a.pos()[k - 1]) >= limit(k)) return false;
        if (static_cast<std::int64_t>(a.neg()[k - 1]) >= limit(k)) return false;
    }
    return true;
}

bool is_in_B(const NormalForm& a, int s) {
    const auto floor = static_cast<std::int64_t>(s) + 1;
    if (!a.pos().empty() && static_cast<std::int64_t>(a.pos().front()) < floor) return false;
    if (!a.neg().empty() && static_cast<std::int64_t>(a.neg().front()) < floor) return false;
    return true;
}

}  // namespace tlab
