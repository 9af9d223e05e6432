#include "ncode/word.hpp"

#include <sstream>

namespace ncode {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::IllegalCharacter: return "IllegalCharacter";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::EqualWords: return "EqualWords";
    case Errc::DuplicateWord: return "DuplicateWord";
    case Errc::BadPosition: return "BadPosition";
    case Errc::BadParameters: return "BadParameters";
    case Errc::NotACode: return "NotACode";
    case Errc::WordNotInCode: return "WordNotInCode";
    case Errc::NotNeighborly: return "NotNeighborly";
    case Errc::LemmaViolation: return "LemmaViolation";
    case Errc::NotADCode: return "NotADCode";
    case Errc::BadPermutation: return "BadPermutation";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::TooLarge: return "TooLarge";
    case Errc::InvalidChoice: return "InvalidChoice";
    case Errc::SliceTooSmall: return "SliceTooSmall";
    case Errc::InternalLemmaViolation: return "InternalLemmaViolation";
    case Errc::ParseFailure: return "ParseFailure";
    case Errc::DegenerateSimplex: return "DegenerateSimplex";
    case Errc::DuplicateSimplex: return "DuplicateSimplex";
    case Errc::WrongDimension: return "WrongDimension";
    }
    return "Unknown";
}

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
    if (letters_.empty())
        throw ParseError(Errc::EmptyInput, "empty word");
}

Word Word::parse(std::string_view text) {
    if (text.empty())
        throw ParseError(Errc::EmptyInput, "empty word");
    std::vector<Letter> letters;
    letters.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        auto a = letter_from_char(text[i]);
        if (!a)
            throw ParseError(Errc::IllegalCharacter,
                             "illegal character '" + std::string(1, text[i]) +
                                 "' at position " + std::to_string(i + 1),
                             0, i + 1);
        letters.push_back(*a);
    }
    return Word(std::move(letters));
}

std::vector<int> Word::prop() const {
    std::vector<int> out;
    for (int i = 1; i <= length(); ++i)
        if (is_proper(at(i)))
            out.push_back(i);
    return out;
}

int Word::prop_count() const {
    int p = 0;
    for (Letter a : letters_)
        if (is_proper(a))
            ++p;
    return p;
}

BigInt Word::weight() const {
    return BigInt(1) << (length() - prop_count());
}

Word Word::with_letter(int pos, Letter a) const {
    auto letters = letters_;
    letters[static_cast<std::size_t>(pos - 1)] = a;
    return Word(std::move(letters));
}

std::string Word::str() const {
    std::string s;
    s.reserve(letters_.size());
    for (Letter a : letters_)
        s.push_back(to_char(a));
    return s;
}

std::strong_ordering Word::operator<=>(const Word& other) const {
    return letters_ <=> other.letters_;
}

std::vector<int> dichotomy_positions(const Word& u, const Word& v) {
    if (u.length() != v.length())
        throw Error(Errc::LengthMismatch,
                    "word lengths differ: " + std::to_string(u.length()) +
                        " vs " + std::to_string(v.length()));
    std::vector<int> out;
    for (int i = 1; i <= u.length(); ++i)
        if (opposite(u.at(i), v.at(i)))
            out.push_back(i);
    return out;
}

PairClass classify_pair(const Word& u, const Word& v) {
    auto d = dichotomy_positions(u, v);
    if (u == v)
        throw Error(Errc::EqualWords, "classify_pair on equal words");
    if (d.empty())
        return {PairClass::Kind::NotDichotomous, {}};
    if (d.size() >= 2)
        return {PairClass::Kind::MultiDichotomous, std::move(d)};
    int i = d[0];
    for (int j = 1; j <= u.length(); ++j)
        if (j != i && u.at(j) != v.at(j))
            return {PairClass::Kind::Neighborly, std::move(d)};
    return {PairClass::Kind::TwinPair, std::move(d)};
}

} // namespace ncode
