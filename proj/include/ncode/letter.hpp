#ifndef NCODE_LETTER_HPP
#define NCODE_LETTER_HPP

#include <optional>

namespace ncode {

// The alphabet A = {0, 1, *}. Enum values fix the letter order 0 < 1 < *
// used by every lexicographic comparison in the library.
enum class Letter : unsigned char { Zero = 0, One = 1, Star = 2 };

// f(0)=1, f(1)=0, f(*)=*.
constexpr Letter flip(Letter a) {
    switch (a) {
    case Letter::Zero: return Letter::One;
    case Letter::One: return Letter::Zero;
    default: return Letter::Star;
    }
}

constexpr bool is_proper(Letter a) { return a != Letter::Star; }

constexpr char to_char(Letter a) {
    switch (a) {
    case Letter::Zero: return '0';
    case Letter::One: return '1';
    default: return '*';
    }
}

constexpr std::optional<Letter> letter_from_char(char c) {
    switch (c) {
    case '0': return Letter::Zero;
    case '1': return Letter::One;
    case '*': return Letter::Star;
    default: return std::nullopt;
    }
}

// True iff {a, b} = {0, 1}.
constexpr bool opposite(Letter a, Letter b) {
    return (a == Letter::Zero && b == Letter::One) ||
           (a == Letter::One && b == Letter::Zero);
}

} // namespace ncode

#endif
