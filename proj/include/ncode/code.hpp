#ifndef NCODE_CODE_HPP
#define NCODE_CODE_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncode/word.hpp"

namespace ncode {

// An ordered collection of pairwise-distinct words of common length n.
// Word order is preserved from input; it fixes matrix-row identity.
// Distinctness is enforced here; dichotomy is a property reported by
// validate(), not a constructor invariant.
class Code {
public:
    Code(int n, std::vector<Word> words);

    // One word per line; '#' starts a comment, blank lines are skipped.
    // Throws IllegalCharacter, LengthMismatch(line), DuplicateWord(lines).
    static Code parse(std::string_view text);

    // Test/CLI convenience; n taken from the first word. Empty list needs
    // an explicit n via the main constructor.
    static Code from_strings(std::initializer_list<std::string_view> rows);
    static Code from_strings(const std::vector<std::string>& rows);

    int length() const { return n_; }
    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }
    const std::vector<Word>& words() const { return words_; }
    const Word& word(std::size_t row0) const { return words_[row0]; }
    bool contains(const Word& w) const;

    // File format: words in collection order, newline-terminated.
    std::string str() const;

    // Set equality (row order ignored).
    bool same_words(const Code& other) const;

    // Words sorted by letter order; used for hashing and set comparison.
    std::vector<Word> sorted_words() const;

private:
    int n_;
    std::vector<Word> words_;
};

struct ValidationReport {
    bool is_code = false;
    bool is_neighborly = false;
    // Common |prop(v)| when all words agree (empty code: unset).
    std::optional<int> uniform_prop;
    // 1-based row pairs, capped at kTwinPairCap; the count stays exact.
    std::vector<std::pair<int, int>> twin_pairs;
    std::size_t twin_pair_count = 0;
    // First violating pair per failed property.
    std::optional<std::pair<int, int>> not_code_witness;
    std::optional<std::pair<int, int>> not_neighborly_witness;

    static constexpr std::size_t kTwinPairCap = 100;

    bool is_d_code(int d) const {
        return is_code && uniform_prop && *uniform_prop == d;
    }
    bool twin_free() const { return twin_pair_count == 0; }
};

// Exhaustive pairwise classification. Never throws on property failures;
// they are report content.
ValidationReport validate(const Code& v);

struct Requirements {
    std::optional<int> d;
    bool neighborly = false;
    bool twin_free = false;
};

// Verdict for a report against requested properties. On failure and when
// `why` is given, stores a one-line reason.
bool meets(const ValidationReport& report, const Requirements& req,
           std::string* why = nullptr);

// vol(V) = sum of word weights; exact count of unit cells of the 2^n grid
// on [0,2]^n. Enforces that V is a code (NotACode with a witness pair).
BigInt volume(const Code& v);

// Sum of weights without the code check; slice-volume helper.
BigInt volume_unchecked(const Code& v);

// Subcode { v in V : v_j = a }, original order. Throws BadPosition.
Code slice(const Code& v, int j, Letter a);

// The clash split of [n] \ {j}: C0/C1 collect the positions where some
// pair inside the 0-/1-slice at j disagrees by 0/1; D is the rest.
struct Partition {
    int pivot = 0;
    std::vector<int> c0, c1, d;
};

// Computes the partition and verifies every clash-split clause (disjointness
// and the star conditions). When check_neighborly is set, the input is
// validated first (NotNeighborly); otherwise a violated clause surfaces as
// LemmaViolation, proof the input was not a neighborly code despite the
// caller's claim. Slices of size < 2 simply yield empty C-sets.
Partition partition_at(const Code& v, int j, bool check_neighborly = true);

struct OpposingUnionReport {
    // (es1): V \ {v} equals the union of the opposing slices over prop(v).
    bool cover_holds = false;
    // Pairwise disjointness of those slices; guaranteed when V is neighborly.
    bool slices_disjoint = false;
    // Position i maximizing |V^{i, v_i'}|; unset when prop(v) is empty or
    // the code is a singleton (all counts zero).
    std::optional<int> argmax_position;
    std::size_t argmax_count = 0;
    // argmax_count * |prop(v)| >= |V| - 1, the (es) bound.
    bool bound_holds = false;
};

// Throws NotACode, WordNotInCode.
OpposingUnionReport opposing_union(const Code& v, const Word& member);

// { v with position j set to flip(eps) : v in V^{j,eps} }. eps must be a
// proper letter. Throws BadPosition / BadParameters.
Code mirror_slice(const Code& v, int j, Letter eps);

// mirror_slice(V,j,eps) joined with V^{j,eps} and V^{j,*}; verified to be
// a code before returning (InternalLemmaViolation if the input was not a
// code in the first place).
Code mirror_slice_combined(const Code& v, int j, Letter eps);

struct SliceBoundEntry {
    int column = 0;
    Letter eps = Letter::Zero;
    std::size_t size_eps = 0;
    std::size_t size_opposite = 0;
    bool holds = false; // |V^{j,eps'}| >= |V^{j,eps}| - M
};

struct SliceBoundReport {
    BigInt slack; // M = 2^d - |V|
    std::vector<SliceBoundEntry> entries;
    bool all_hold = true;
};

// Checks |V^{j,eps'}| >= |V^{j,eps}| - M for every column and eps by
// building the mirror-union code and applying the 2^d cap. Requires a
// d-code that is a code (NotADCode otherwise).
SliceBoundReport slice_bound_check(const Code& v, int d);

} // namespace ncode

#endif
