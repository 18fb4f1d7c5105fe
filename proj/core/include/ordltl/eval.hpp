// ordltl/eval.hpp
//
// Semantic evaluation of formulas on finitely presented ordinal words.
//
// A formula holds at a position of a word as follows: atoms read the letter;
// X a needs a successor position where a holds; a U b (strict) needs a later
// position where b holds with a holding at every position strictly between.
//
// Evaluation runs backwards. `transfer` maps the valuation of the closure at
// the position right after a segment to the valuation at the segment's first
// position; std::nullopt stands for "no position follows" (end of word).
// An w-power is handled by `fix_loop`: every loop start of v^w has the same
// suffix, hence the same valuation, and that valuation is a fixed point of
// transfer(v, .). Untils that stay undetermined by the fixed point are the
// ones whose left operand holds throughout and whose right operand never
// does; they are decided at the limit position.

#ifndef ORDLTL_EVAL_HPP
#define ORDLTL_EVAL_HPP

#include "ordltl/formula.hpp"
#include "ordltl/word.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace ordltl {

enum class TruthValue3 : std::uint8_t { False, True, Unknown };

/// Truth of every closure member at one position, indexed like the closure.
using Valuation = std::vector<bool>;

/// Per-member three-valued state used while solving an w-power.
using ClosureAssignment = std::vector<TruthValue3>;

/// The loop valuation computed by fix_loop is not a fixed point. Signals a
/// defect in the resolution rule.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct EvalStats {
    /// Largest number of refinement rounds any fix_loop call needed.
    std::size_t max_fix_rounds = 0;
    std::size_t fix_loop_calls = 0;
    std::size_t memo_hits = 0;
};

class Evaluator {
public:
    explicit Evaluator(const Formula& f);

    const Closure& closure() const noexcept { return closure_; }
    const Formula& formula() const noexcept { return closure_.root(); }

    /// Truth of the formula at position 0 of `w`.
    bool eval(const Word& w);
    /// Valuation of the closure at position 0 of `w`, word ending after `w`.
    Valuation valuation_at_start(const Word& w) { return transfer(w, std::nullopt); }

    Valuation transfer(const Word& segment, const std::optional<Valuation>& after);
    /// Valuation at every loop start of body^w, given the valuation at the
    /// limit position that follows (or nullopt when the word ends there).
    Valuation fix_loop(const Word& body, const std::optional<Valuation>& after_limit);

    /// One backward step over a single letter.
    Valuation step(const Letter& letter, const std::optional<Valuation>& after) const;

    const EvalStats& stats() const noexcept { return stats_; }
    void clear_memo() { memo_.clear(); }

private:
    struct MemoKey {
        const void* word;
        bool has_after;
        Valuation after;
        friend bool operator==(const MemoKey&, const MemoKey&) = default;
    };
    struct MemoKeyHash {
        std::size_t operator()(const MemoKey& k) const noexcept;
    };
    struct MemoEntry {
        Word word;  // keeps the keyed node alive
        Valuation value;
    };

    bool limit_justified(std::size_t until, const std::optional<Valuation>& after_limit) const;

    Closure closure_;
    std::vector<std::optional<Proposition>> atom_of_;
    std::unordered_map<MemoKey, MemoEntry, MemoKeyHash> memo_;
    EvalStats stats_;
};

/// Truth of `f` at position 0 of `w`.
bool eval(const Formula& f, const Word& w);

/// Direct recursive evaluation on a finite word, by position enumeration.
/// Shares no code with Evaluator. Throws std::invalid_argument when `w`
/// is infinite and PositionOutOfRange when pos >= length(w).
bool eval_naive_finite(const Formula& f, const Word& w, std::uint64_t pos);

}  // namespace ordltl

#endif  // ORDLTL_EVAL_HPP
