#ifndef NCODE_ERRORS_HPP
#define NCODE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncode {

enum class Errc {
    IllegalCharacter,
    EmptyInput,
    LengthMismatch,
    EqualWords,
    DuplicateWord,
    BadPosition,
    BadParameters,
    NotACode,
    WordNotInCode,
    NotNeighborly,
    LemmaViolation,
    NotADCode,
    BadPermutation,
    SizeMismatch,
    TooLarge,
    InvalidChoice,
    SliceTooSmall,
    InternalLemmaViolation,
    ParseFailure,
    DegenerateSimplex,
    DuplicateSimplex,
    WrongDimension,
};

const char* errc_name(Errc c);

// Domain and parse failures. Structured payloads (positions, rows, volumes)
// live in the derived types below; everything carries an Errc for dispatch.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

// Parse failures carry a 1-based line/column where that makes sense
// (0 = not applicable).
class ParseError : public Error {
public:
    ParseError(Errc code, const std::string& msg, std::size_t line = 0,
               std::size_t column = 0)
        : Error(code, msg), line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

// Violations witnessed by a concrete pair of rows (1-based).
class PairError : public Error {
public:
    PairError(Errc code, const std::string& msg, int row_a, int row_b)
        : Error(code, msg), row_a_(row_a), row_b_(row_b) {}
    int row_a() const { return row_a_; }
    int row_b() const { return row_b_; }

private:
    int row_a_, row_b_;
};

} // namespace ncode

#endif
