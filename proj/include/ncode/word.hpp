#ifndef NCODE_WORD_HPP
#define NCODE_WORD_HPP

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ncode/errors.hpp"
#include "ncode/letter.hpp"

namespace ncode {

using BigInt = boost::multiprecision::cpp_int;

// An immutable word v = v_1...v_n over {0,1,*}, n >= 1. Positions are
// 1-based throughout the public surface.
class Word {
public:
    explicit Word(std::vector<Letter> letters);

    // Parses "00*"-style text. Throws IllegalCharacter / EmptyInput.
    static Word parse(std::string_view text);

    int length() const { return static_cast<int>(letters_.size()); }
    Letter at(int pos) const { return letters_[static_cast<std::size_t>(pos - 1)]; }
    const std::vector<Letter>& letters() const { return letters_; }

    // prop(v) = { i : v_i != * }, ascending.
    std::vector<int> prop() const;
    int prop_count() const;

    // |v| = 2^(n - |prop(v)|), exact.
    BigInt weight() const;

    // Copy with one letter replaced.
    Word with_letter(int pos, Letter a) const;

    std::string str() const;

    // Letter order 0 < 1 < *.
    std::strong_ordering operator<=>(const Word& other) const;
    bool operator==(const Word& other) const { return letters_ == other.letters_; }

private:
    std::vector<Letter> letters_;
};

// Positions i with {u_i, v_i} = {0, 1}, ascending. Throws LengthMismatch.
std::vector<int> dichotomy_positions(const Word& u, const Word& v);

struct PairClass {
    enum class Kind { NotDichotomous, MultiDichotomous, Neighborly, TwinPair };
    Kind kind;
    // Dichotomy positions; exactly one entry for Neighborly/TwinPair.
    std::vector<int> positions;
};

// Classifies a pair of distinct equal-length words. TwinPair when the single
// dichotomy position is the only difference; Neighborly when some other
// coordinate differs as well. Throws LengthMismatch, EqualWords.
PairClass classify_pair(const Word& u, const Word& v);

} // namespace ncode

#endif
