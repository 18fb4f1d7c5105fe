// ordltl/word.hpp
//
// Finitely presented transfinite words. A word is a single letter, a
// concatenation of words, or the w-power of a word; nesting depth of
// w-powers (the level) bounds the length below w^(level+1).
//
// Construction normalizes: concatenations are flattened and a concatenation
// of one word collapses to that word. Equality is structural on the
// normalized form.

#ifndef ORDLTL_WORD_HPP
#define ORDLTL_WORD_HPP

#include "ordltl/formula.hpp"
#include "ordltl/ordinal.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordltl {

class PositionOutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class Word {
public:
    enum class Kind { Single, Cat, OmegaPow };

    static Word single(Letter letter);
    /// Throws std::invalid_argument on an empty sequence.
    static Word cat(const std::vector<Word>& parts);
    static Word omega(const Word& body);

    Kind kind() const noexcept { return node_->kind; }
    const Letter& letter() const;
    /// Components of a Cat.
    const std::vector<Word>& parts() const;
    /// Body of an OmegaPow.
    const Word& body() const;

    const Ordinal& length() const noexcept { return node_->length; }
    /// Nesting depth of w-powers.
    std::size_t level() const noexcept { return node_->level; }
    /// Number of Single nodes in the presentation.
    std::size_t letter_count() const noexcept { return node_->letters; }

    /// Node identity; stable for the lifetime of the word and its copies.
    const void* id() const noexcept { return node_.get(); }

    friend bool operator==(const Word& a, const Word& b) noexcept;

private:
    struct Node {
        Kind kind;
        Letter letter;
        std::vector<Word> kids;
        Ordinal length;
        std::size_t level = 0;
        std::size_t letters = 0;
    };
    explicit Word(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

inline const Ordinal& length(const Word& w) noexcept { return w.length(); }

/// Letter at position `pos`; throws PositionOutOfRange unless pos < length(w).
Letter letter_at(const Word& w, const Ordinal& pos);

/// Word denoting the suffix of `w` from `pos`. Inside an w-power the suffix
/// at any block boundary is the w-power itself.
Word suffix_from(const Word& w, const Ordinal& pos);

/// Compact human-readable form, e.g. `{p}{}({q})^w`.
std::string to_string(const Word& w);

}  // namespace ordltl

#endif  // ORDLTL_WORD_HPP
