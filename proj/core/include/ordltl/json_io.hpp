// ordltl/json_io.hpp
//
// JSON forms of words and verdicts.
//
// Word:    {"letter": ["p","q"]} | {"cat": [word, ...]} | {"omega": word}
// Verdict: {"schemaVersion":1, "status":"SAT"|"UNSAT", "bound":"w^4",
//           "level":n|null, "witness":word|null,
//           "stats":{"stateCount":n, "factCount":n[, "elapsedMillis":n]}}

#ifndef ORDLTL_JSON_IO_HPP
#define ORDLTL_JSON_IO_HPP

#include "ordltl/solver.hpp"
#include "ordltl/word.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace ordltl {

inline constexpr int kSchemaVersion = 1;

class WordFormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Compact single-line JSON.
std::string word_to_json(const Word& w);
/// Throws WordFormatError on malformed input.
Word word_from_json(std::string_view text);

/// `with_timing` adds stats.elapsedMillis, which makes output vary between runs.
std::string verdict_to_json(const Verdict& v, bool with_timing = false);

}  // namespace ordltl

#endif  // ORDLTL_JSON_IO_HPP
