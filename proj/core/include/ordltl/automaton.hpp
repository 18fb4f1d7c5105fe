// ordltl/automaton.hpp
//
// Ordinal automaton of a formula and its emptiness check.
//
// States are the maximal consistent subsets of the closure; a state is the
// truth profile of one position and reads the letter of its atoms. The
// successor relation threads X and U obligations one step; the limit
// relation decides which state may sit at a limit position given the set of
// states visited cofinally below it.
//
// Emptiness is layered by ordinal level. A level-0 fact is one successor
// step. A level-(j+1) fact is a closed walk over facts of level <= j, iterated
// w times, followed by a limit step. Facts carry the union of the visited
// states' members, restricted to the members the limit rules read, which is
// all the limit rules depend on.

#ifndef ORDLTL_AUTOMATON_HPP
#define ORDLTL_AUTOMATON_HPP

#include "ordltl/formula.hpp"
#include "ordltl/word.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordltl {

/// The closure has more complement pairs than the configured bound.
class StateExplosion : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedSkeleton : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kDefaultMaxPairs = 22;

struct AutomatonOptions {
    /// Refuse closures with more complement pairs than this.
    std::size_t max_pairs = kDefaultMaxPairs;
    /// Test hook: negate the pass-through requirement of limit rule (a).
    bool mutate_limit_rule_a = false;
};

using StateId = std::uint32_t;
using FactId = std::uint32_t;
using Mask = MaxConsSet::Mask;

/// A run fragment of length w^level (a letter at level 0) from `source` to
/// the position right after it, held by `target`.
struct Fact {
    StateId source;
    StateId target;
    /// Members of the visited states, source and target included, restricted
    /// to the members the limit rules inspect.
    Mask visited;
    std::uint32_t level;
    /// Closed walk at `source` iterated w times; empty at level 0.
    std::vector<FactId> cycle;
};

struct RunSkeleton {
    std::shared_ptr<const std::vector<Fact>> facts;
    StateId initial = 0;
    /// Facts composed from the initial state.
    std::vector<FactId> prefix;
    /// Successor-length acceptance: the state at the last position.
    std::optional<StateId> last;
    /// Limit-length acceptance: the closed walk iterated w times at the end.
    std::vector<FactId> final_cycle;
    std::uint32_t level = 0;
};

struct EmptinessResult {
    std::optional<RunSkeleton> run;
    std::size_t fact_count = 0;
};

class OrdinalAutomaton {
public:
    /// Throws StateExplosion when the closure is too large.
    static OrdinalAutomaton build(const Formula& f, const AutomatonOptions& opts = {});

    const Formula& formula() const noexcept { return closure_->root(); }
    const Closure& closure() const noexcept { return *closure_; }
    const std::vector<MaxConsSet>& states() const noexcept { return states_; }
    const std::vector<StateId>& initial() const noexcept { return initial_; }
    /// Successor adjacency, sorted by target index.
    const std::vector<StateId>& successors(StateId s) const { return succ_.at(s); }
    std::size_t edge_count() const noexcept;
    const AutomatonOptions& options() const noexcept { return opts_; }

    bool succ_allowed(MaxConsSet s, MaxConsSet t) const;
    bool end_consistent(MaxConsSet s) const;

    /// Limit rules over the set S of cofinally visited states.
    bool limit_allowed(std::span<const MaxConsSet> cofinal, MaxConsSet t) const;
    bool limit_end_accepting(std::span<const MaxConsSet> cofinal) const;

    /// The same rules over the union of the members of S. Exact, because
    /// "some state of S contains x" is bit x of the union and "every state
    /// contains x" is the absence of the complement of x.
    bool limit_allowed_union(Mask any, MaxConsSet t) const;
    bool limit_end_accepting_union(Mask any) const;

    /// Members read by the limit rules.
    Mask limit_relevant() const noexcept { return relevant_; }

    /// Search for an accepted word of length below w^(max_level+1).
    EmptinessResult emptiness(std::uint32_t max_level) const;

    Letter letter(StateId s) const { return letter_of(*closure_, states_.at(s)); }

    /// Successor graph in Graphviz syntax.
    std::string to_dot() const;

private:
    OrdinalAutomaton() = default;

    std::shared_ptr<const Closure> closure_;
    std::vector<MaxConsSet> states_;
    std::vector<StateId> initial_;
    std::vector<std::vector<StateId>> succ_;
    Mask relevant_ = 0;
    AutomatonOptions opts_;
};

inline OrdinalAutomaton build(const Formula& f, const AutomatonOptions& opts = {})
{
    return OrdinalAutomaton::build(f, opts);
}

/// Word read along the skeleton. Throws MalformedSkeleton when the skeleton
/// does not describe a connected run of `a`.
Word extract_witness(const OrdinalAutomaton& a, const RunSkeleton& r);

}  // namespace ordltl

#endif  // ORDLTL_AUTOMATON_HPP
