// ordltl/solver.hpp
//
// Satisfiability, validity and equivalence over words of length below
// w^(K+1). Every SAT verdict carries a witness word that has been checked by
// the evaluator before it is returned.

#ifndef ORDLTL_SOLVER_HPP
#define ORDLTL_SOLVER_HPP

#include "ordltl/automaton.hpp"
#include "ordltl/formula.hpp"
#include "ordltl/ordinal.hpp"
#include "ordltl/word.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ordltl {

inline constexpr std::uint32_t kMaxLevelLimit = 4;

/// A witness failed evaluation. Never expected; signals a solver defect.
class WitnessValidationFailure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct SolverOptions {
    AutomatonOptions automaton;
};

struct Verdict {
    enum class Status { Sat, Unsat };

    struct Stats {
        std::size_t state_count = 0;
        std::size_t fact_count = 0;
        std::uint64_t elapsed_millis = 0;
    };

    Status status = Status::Unsat;
    std::optional<Word> witness;
    std::optional<std::uint32_t> level;
    /// Search bound K; verdicts speak about words shorter than w^(K+1).
    std::uint32_t max_level = 0;
    Stats stats;

    bool sat() const noexcept { return status == Status::Sat; }
    Ordinal bound() const { return Ordinal::omega_power(max_level + 1); }
};

/// min(3, size(f)).
std::uint32_t default_max_level(const Formula& f);

/// Throws std::invalid_argument when max_level exceeds kMaxLevelLimit,
/// StateExplosion on oversized closures and WitnessValidationFailure when
/// the witness does not satisfy `f`.
Verdict satisfiable(const Formula& f, std::uint32_t max_level, const SolverOptions& opts = {});

bool valid(const Formula& f, std::uint32_t max_level, const SolverOptions& opts = {});

struct Equivalence {
    bool equivalent = true;
    /// A word on which the two formulas disagree.
    std::optional<Word> distinguishing;
};

Equivalence check_equivalence(const Formula& a, const Formula& b, std::uint32_t max_level,
                              const SolverOptions& opts = {});

inline bool equivalent(const Formula& a, const Formula& b, std::uint32_t max_level,
                       const SolverOptions& opts = {})
{
    return check_equivalence(a, b, max_level, opts).equivalent;
}

std::string to_string(Verdict::Status s);

}  // namespace ordltl

#endif  // ORDLTL_SOLVER_HPP
