#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace automol {

// Grammar-file problems; line is 1-based.
class GrammarError : public std::runtime_error {
public:
    enum class Code {
        MalformedRule,
        DuplicateRule,
        UndefinedNonterminal,
        EmptyAlternative,
        DepthInfeasible,
    };

    GrammarError(Code code, std::string message, std::size_t line = 0)
        : std::runtime_error(line ? message + " (line " + std::to_string(line) + ")" : message),
          code_(code),
          line_(line) {}

    Code code() const { return code_; }
    std::size_t line() const { return line_; }

private:
    Code code_;
    std::size_t line_;
};

// Sentence does not belong to the grammar's language; position is a token index.
class SentenceError : public std::runtime_error {
public:
    enum class Code { Unparseable, TrailingTokens };

    SentenceError(Code code, std::string message, std::size_t position)
        : std::runtime_error(message + " (token " + std::to_string(position) + ")"),
          code_(code),
          position_(position) {}

    Code code() const { return code_; }
    std::size_t position() const { return position_; }

private:
    Code code_;
    std::size_t position_;
};

// SMILES problems; offset is a 0-based character position in the input.
class SmilesError : public std::runtime_error {
public:
    enum class Code {
        UnmatchedRingClosure,
        UnmatchedParenthesis,
        UnknownAtomSymbol,
        ValenceExceeded,
        AromaticOutsideRing,
        Syntax,
    };

    SmilesError(Code code, std::string message, std::size_t offset)
        : std::runtime_error(message + " (offset " + std::to_string(offset) + ")"),
          code_(code),
          offset_(offset) {}

    Code code() const { return code_; }
    std::size_t offset() const { return offset_; }

private:
    Code code_;
    std::size_t offset_;
};

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Cooperative budget overrun, caught by the evaluator and turned into a
// timeout status. Never escapes evaluate_pipeline.
class DeadlineExceeded : public std::runtime_error {
public:
    DeadlineExceeded() : std::runtime_error("deadline exceeded") {}
};

// Selector kept zero columns; the evaluator records it as a failed pipeline.
class EmptyMaskError : public std::runtime_error {
public:
    EmptyMaskError() : std::runtime_error("feature selector kept no columns") {}
};

}  // namespace automol
