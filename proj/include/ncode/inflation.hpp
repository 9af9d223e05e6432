#ifndef NCODE_INFLATION_HPP
#define NCODE_INFLATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "ncode/code.hpp"

namespace ncode {

enum class AdvantageState { ZeroAdvantage, OneAdvantage, Balanced };

const char* advantage_name(AdvantageState s);

struct SliceState {
    int position = 0;
    BigInt vol0, vol1;
    AdvantageState state = AdvantageState::Balanced;
};

// Exact volumes of V^{i,0} and V^{i,1} and the advantage classification.
// Throws BadPosition.
SliceState slice_state(const Code& v, int i);

// Raised when delta_i is not an inflation choice at position i, i.e.
// vol(V^{i,delta_i'}) > vol(V^{i,delta_i}).
class InvalidChoiceError : public Error {
public:
    InvalidChoiceError(int position, int bit, BigInt vol0, BigInt vol1,
                       int step = 0);
    int position() const { return position_; }
    int bit() const { return bit_; }
    const BigInt& vol0() const { return vol0_; }
    const BigInt& vol1() const { return vol1_; }
    int step() const { return step_; } // 1-based step in the order; 0 = single

private:
    int position_, bit_, step_;
    BigInt vol0_, vol1_;
};

// V^{i,delta,*} ∪ V^{i,*}: the delta-slice with position i starred, plus
// the star slice; the opposite slice is dropped. Requires
// vol(V^{i,delta'}) <= vol(V^{i,delta}). Input must be a code (not
// re-validated here); the output then is one too. Word order preserved.
Code inflate_at(const Code& v, int i, int delta_bit);

struct WordFate {
    enum class Kind { Unmodified, Modified, Removed };
    Kind kind = Kind::Unmodified;
    // Modified: the final word. Removed: the word's form just before
    // removal (differs from the original iff modified_before_removal).
    std::optional<Word> final_word;
    std::optional<int> removed_step; // 1-based index into the order
    bool modified_before_removal = false;
};

struct InflationTrace {
    std::vector<int> order;
    std::vector<int> realized_delta;          // one bit per step
    std::vector<AdvantageState> step_states;  // state observed at each step
    std::vector<WordFate> fates;              // per original word, input order
};

struct InflationResult {
    Code code;
    InflationTrace trace;
};

struct InflateOptions {
    int balanced_tie_break = 0; // delta used on balanced steps when auto
};

// Folds inflate_at over the order. With delta given, each step's choice is
// validated (InvalidChoiceError carries the 1-based step). Without delta,
// the advantaged side is taken and balanced steps use the configured
// tie-break. Positions must be distinct. Throws LengthMismatch when
// |delta| != |order|, BadPosition, BadParameters.
InflationResult inflate(const Code& v, const std::vector<int>& order,
                        const std::optional<std::vector<int>>& delta = std::nullopt,
                        const InflateOptions& opts = {});

// All codes reachable by some permutation of J and some valid inflation
// sequence; duplicates removed by word-set equality. Memoizes intermediate
// states. Throws TooLarge when |J| exceeds the limit.
std::vector<Code> inflate_all(const Code& v, const std::vector<int>& positions,
                              std::size_t limit = 8);

struct CorollaryReport {
    bool hypotheses_met = false;
    std::vector<std::string> unmet; // failing clauses, checked in order

    int d = 0;       // set when the code is a d-code
    BigInt slack;    // M = 2^d - |V|
    std::vector<int> inflation_set; // C^1_0, when standard form holds

    bool enumerated = false;
    std::size_t outcome_count = 0;
    // Every outcome equals {0*...*} ∪ V^{1,1}.
    bool all_outcomes_match = false;
    std::optional<Code> counterexample;

    bool star_slice_nonempty = false;
    bool vol_strictly_increases = false; // over all outcomes; when star slice nonempty
    bool star_slice_small = false;       // |V^{1,*}| < M
    bool zero_slice_large = false;       // |V^{1,0}| > 2^(d-1) - M
    bool one_slice_large = false;        // |V^{1,1}| > 2^(d-1) - M

    bool conclusions_hold = false;
};

// Checks the structure-corollary hypotheses (neighborly d-code in standard
// form, twin-free, |V| = 2^d - M with M >= 2, |V^{1,0}| > 9M) and, when
// they hold, enumerates every inflation on C^1_0 and renders the verdict.
// force_enumeration runs the enumeration part even when hypotheses fail,
// provided the code is structurally in standard form. Throws TooLarge.
CorollaryReport verify_structure_corollary(const Code& v,
                                           bool force_enumeration = false,
                                           std::size_t limit = 8);

} // namespace ncode

#endif
