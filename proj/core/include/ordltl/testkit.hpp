// ordltl/testkit.hpp
//
// Seeded generators for formulas and words, and the differential harness
// that checks solver verdicts against the evaluator.
//
// Every draw is keyed by (seed, index), so cases are independent of each
// other and of the order they run in.

#ifndef ORDLTL_TESTKIT_HPP
#define ORDLTL_TESTKIT_HPP

#include "ordltl/eval.hpp"
#include "ordltl/formula.hpp"
#include "ordltl/solver.hpp"
#include "ordltl/word.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ordltl::testkit {

struct GenConfig {
    std::uint64_t seed = 42;
    std::size_t max_size = 12;
    std::size_t prop_count = 3;
    std::size_t max_level = 2;
    std::size_t case_count = 500;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

/// Generator engine for draw `index` of stream `stream` under `seed`.
std::mt19937_64 engine_for(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Proposition names used by the generators: p, q, r.
std::vector<Proposition> generator_props(std::size_t count);

Formula gen_formula(const GenConfig& cfg, std::uint64_t i);
/// At most cfg.max_size letters, w-power nesting at most cfg.max_level.
Word gen_word(const GenConfig& cfg, std::uint64_t i);

/// All words of length 1..max_length over the given alphabet, checked via
/// backward valuations. Returns a satisfying word if one exists.
std::optional<Word> exhaustive_finite_model(const Formula& f, std::size_t max_length);

/// Every letter over `props`, in binary counting order.
std::vector<Letter> all_letters(const std::vector<Proposition>& props);

struct HarnessOptions {
    std::uint32_t solver_level = 3;
    std::size_t finite_search_length = 6;
    std::size_t lasso_draws = 1000;
    std::size_t lasso_max_level = 2;
    std::size_t lasso_max_letters = 8;
    /// Finite words per case on which eval is compared with eval_naive_finite.
    std::size_t naive_draws = 20;
    /// Worker threads; 0 picks the hardware concurrency.
    std::size_t threads = 0;
    bool shrink = true;
    /// Each generated formula f is checked as f & conjunct. Used to push
    /// the harness onto words of limit length, e.g. with G X T.
    std::optional<Formula> conjunct;
    SolverOptions solver;
};

struct CaseRecord {
    std::uint64_t i = 0;
    std::string formula;
    std::string status;  // SAT, UNSAT or ERROR
    bool ok = true;
    std::string detail;
    std::optional<std::uint32_t> level;
};

struct Report {
    GenConfig config;
    std::vector<CaseRecord> cases;
    std::size_t failures = 0;
    std::size_t sat = 0;
    std::size_t unsat = 0;
    /// Highest level at which some case first became SAT.
    std::optional<std::uint32_t> max_sat_level;
    /// Smallest failing formula found by re-running with smaller sizes.
    std::optional<CaseRecord> minimal_failure;
    std::optional<std::size_t> minimal_failure_size;

    /// One JSON object per case, then one summary object.
    std::string to_jsonl() const;
};

CaseRecord run_case(const GenConfig& cfg, std::uint64_t i, const HarnessOptions& opts);

Report differential_run(const GenConfig& cfg, const HarnessOptions& opts = {});

}  // namespace ordltl::testkit

#endif  // ORDLTL_TESTKIT_HPP
