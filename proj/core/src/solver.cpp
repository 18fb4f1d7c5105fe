#include "ordltl/solver.hpp"

#include "ordltl/eval.hpp"

#include <algorithm>
#include <chrono>

namespace ordltl {

std::uint32_t default_max_level(const Formula& f)
{
    return static_cast<std::uint32_t>(std::min<std::size_t>(3, f.size()));
}

Verdict satisfiable(const Formula& f, std::uint32_t max_level, const SolverOptions& opts)
{
    if (max_level > kMaxLevelLimit)
        throw std::invalid_argument("max level " + std::to_string(max_level) +
                                    " exceeds the supported " + std::to_string(kMaxLevelLimit));
    const auto started = std::chrono::steady_clock::now();

    const OrdinalAutomaton a = OrdinalAutomaton::build(f, opts.automaton);
    const EmptinessResult res = a.emptiness(max_level);

    Verdict v;
    v.max_level = max_level;
    v.stats.state_count = a.states().size();
    v.stats.fact_count = res.fact_count;
    if (res.run) {
        Word w = extract_witness(a, *res.run);
        if (!eval(f, w))
            throw WitnessValidationFailure("witness " + to_string(w) + " does not satisfy " +
                                           render(f));
        v.status = Verdict::Status::Sat;
        v.witness = std::move(w);
        v.level = res.run->level;
    }
    v.stats.elapsed_millis = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              started)
            .count());
    return v;
}

bool valid(const Formula& f, std::uint32_t max_level, const SolverOptions& opts)
{
    return !satisfiable(Formula::negate(f), max_level, opts).sat();
}

Equivalence check_equivalence(const Formula& a, const Formula& b, std::uint32_t max_level,
                              const SolverOptions& opts)
{
    Verdict v = satisfiable(Formula::negate(Formula::iff(a, b)), max_level, opts);
    if (!v.sat()) return {};
    return {false, std::move(v.witness)};
}

std::string to_string(Verdict::Status s) { return s == Verdict::Status::Sat ? "SAT" : "UNSAT"; }

}  // namespace ordltl
