#pragma once

// Exact arithmetic in Thompson's group F = < x_0, x_1, ... | x_i^-1 x_k x_i = x_{k+1}, k > i >.
//
// Every element is stored in its unique normal form
//     x_{i_1} ... x_{i_r} x_{j_t}^-1 ... x_{j_1}^-1
// with i_1 <= ... <= i_r, j_1 <= ... <= j_t, and whenever an index i occurs in
// both parts, i+1 occurs in one of them as well.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tlab {

using Index = std::uint32_t;

struct Atom {
    Index index = 0;
    bool inverse = false;

    static constexpr Atom gen(Index i) { return {i, false}; }
    static constexpr Atom inv(Index i) { return {i, true}; }

    constexpr int sign() const { return inverse ? -1 : +1; }
    constexpr Atom inverted() const { return {index, !inverse}; }

    friend constexpr bool operator==(const Atom&, const Atom&) = default;
};

/// An unreduced product of signed generators.
using Word = std::vector<Atom>;

class NormalForm {
public:
    NormalForm() = default;

    /// Validates both sortedness and the pair-occurrence condition.
    /// Throws std::invalid_argument when either fails.
    static NormalForm from_parts(std::vector<Index> pos, std::vector<Index> neg);

    /// Caller guarantees the invariants (used on the hot paths).
    static NormalForm unchecked(std::vector<Index> pos, std::vector<Index> neg) {
        NormalForm nf;
        nf.pos_ = std::move(pos);
        nf.neg_ = std::move(neg);
        return nf;
    }

    static NormalForm identity() { return {}; }
    static NormalForm generator(Index i) { return unchecked({i}, {}); }
    static NormalForm generator_inverse(Index i) { return unchecked({}, {i}); }

    const std::vector<Index>& pos() const { return pos_; }
    const std::vector<Index>& neg() const { return neg_; }

    std::size_t length() const { return pos_.size() + neg_.size(); }
    bool is_identity() const { return pos_.empty() && neg_.empty(); }

    /// The atom spelling x_{i_1} ... x_{i_r} x_{j_t}^-1 ... x_{j_1}^-1.
    Word atoms() const;

    friend bool operator==(const NormalForm&, const NormalForm&) = default;

private:
    std::vector<Index> pos_;
    std::vector<Index> neg_;
};

NormalForm normalize(std::span<const Atom> word);
NormalForm multiply(const NormalForm& a, const NormalForm& b);
NormalForm invert(const NormalForm& a);

inline std::size_t nf_length(const NormalForm& a) { return a.length(); }
inline bool equals(const NormalForm& a, const NormalForm& b) { return a == b; }

/// g^-1 a g
NormalForm conjugate(const NormalForm& a, const NormalForm& g);

/// Left-to-right product of any number of elements.
template <typename... Rest>
NormalForm product(const NormalForm& first, const Rest&... rest) {
    NormalForm acc = first;
    ((acc = multiply(acc, rest)), ...);
    return acc;
}

/// Fixed-width big-endian encoding: |pos|, pos..., sentinel, |neg|, neg...
/// (all fields 4 bytes). Equal keys exactly when the elements are equal.
std::string canonical_key(const NormalForm& a);

/// Same ordering as comparing canonical_key(a) and canonical_key(b)
/// bytewise, without materializing the keys.
std::strong_ordering canonical_compare(const NormalForm& a, const NormalForm& b);

inline bool canonical_less(const NormalForm& a, const NormalForm& b) {
    return canonical_compare(a, b) < 0;
}

struct Fingerprint {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

struct FingerprintHash {
    std::size_t operator()(const Fingerprint& f) const noexcept {
        return static_cast<std::size_t>(f.lo ^ (f.hi * 0x9e3779b97f4a7c15ULL));
    }
};

/// 128-bit digest of canonical_key(a).
Fingerprint fingerprint(const NormalForm& a);

/// Direct scan of both invariants.
bool is_normal(std::span<const Index> pos, std::span<const Index> neg);

/// Membership in A = < x_0 x_1^-1, ..., x_0 x_s^-1 >: equal part lengths m and
/// i_k - k < s, j_k - k < s for k = 1..m.
bool is_in_A(const NormalForm& a, int s);

/// Membership in B = < x_{s+1}, ..., x_{2s} >: no generator x_0..x_s occurs.
bool is_in_B(const NormalForm& a, int s);

namespace detail {

/// Brings a seminormal pair (both parts sorted) to normal form in place.
void reduce_seminormal(std::vector<Index>& pos, std::vector<Index>& neg);

}  // namespace detail

}  // namespace tlab
