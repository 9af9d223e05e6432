#ifndef NCODE_TRANSFORM_HPP
#define NCODE_TRANSFORM_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncode/code.hpp"

namespace ncode {

// A column permutation plus per-column flips: the isomorphism h∘σ̄.
// Output position i takes the (possibly flipped) input letter at σ(i):
//   (t·v)_i = h_i(v_{σ(i)}),  flips indexed by output position.
class Transform {
public:
    // sigma: 1-based image list (σ(1),...,σ(n)); flips: per output position.
    // Throws BadPermutation / SizeMismatch.
    Transform(std::vector<int> sigma, std::vector<bool> flips);

    static Transform identity(int n);

    int size() const { return static_cast<int>(sigma_.size()); }
    const std::vector<int>& sigma() const { return sigma_; }
    const std::vector<bool>& flips() const { return flips_; }
    std::vector<int> flip_positions() const;

    Word apply(const Word& v) const;

    Transform inverse() const;

    // "sigma: i1,...,in; flips: j1,..." (flips list may be empty).
    std::string str() const;
    static Transform parse(std::string_view text);

    bool operator==(const Transform& other) const = default;

private:
    std::vector<int> sigma_;
    std::vector<bool> flips_;
};

// compose(a, b)(v) = a(b(v)).
Transform compose(const Transform& outer, const Transform& inner);

// Row order preserved; |output| = |V|. Throws SizeMismatch when the
// transform length differs from the code length.
Code apply_transform(const Code& v, const Transform& t);

// A transform t with apply_transform(U, t) equal to W as a word set, or
// nullopt. Backtracking over column assignments with prefix-multiset
// pruning; desk-scale n. Throws LengthMismatch.
std::optional<Transform> are_isomorphic(const Code& u, const Code& w);

struct CanonicalResult {
    Code code;
    Transform transform; // apply_transform(input, transform) == code (as sets)
};

// The orbit-minimal representative: minimum over all transforms of the
// sorted word list, rows compared lexicographically in row-major order
// with letter order 0 < 1 < *. Deterministic. Throws TooLarge past max_n.
CanonicalResult canonical_form(const Code& v, int max_n = 24);

// True iff v's sorted word list already is the orbit minimum. Same search
// as canonical_form but aborts on the first strict improvement.
bool is_canonical(const Code& v, int max_n = 24);

struct StandardFormInfo {
    Transform transform;
    int s = 0; // C^1_0 = {2..s}
    int r = 0; // C^1_1 = {s+1..r}, D = {r+1..n}
    std::size_t size_zero = 0, size_one = 0, size_star = 0; // slices at column 1
};

// Normalizes a neighborly code into standard form: column 1 realizes the
// slice-size maximum as a 0-slice, C-blocks and D are contiguous, and
// D-columns carry only {0,*} over the 0/1-rows. Tie-breaks: smallest
// column, eps=0 first; intra-block column order is stable. Throws
// NotNeighborly, SliceTooSmall, InternalLemmaViolation.
std::pair<Code, StandardFormInfo> standardize(const Code& v);

// Structural test used by the corollary checker: neighborly, C^1_0={2..s},
// C^1_1={s+1..r} both nonempty, D={r+1..n}, column 1 realizes the slice
// maximum as a 0-slice, and D-columns lie in {0,*} over the 0/1-rows.
bool in_standard_form(const Code& v, std::string* why = nullptr);

} // namespace ncode

#endif
