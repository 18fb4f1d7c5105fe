#include "ordltl/automaton.hpp"
#include "ordltl/eval.hpp"
#include "ordltl/solver.hpp"
#include "ordltl/testkit.hpp"

#include <benchmark/benchmark.h>

using namespace ordltl;

namespace {

const char* const kFormulas[] = {
    "G F p & F G !p",
    "G X T & G F p & G F !p",
    "G(q -> X q) & G(!q -> X !q) & G F q & G F !q",
    "(p U q) & G(q -> X(!q U p))",
};

void BM_Satisfiable(benchmark::State& state)
{
    const Formula f = parse(kFormulas[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(satisfiable(f, 2).sat());
}
BENCHMARK(BM_Satisfiable)->DenseRange(0, 3);

void BM_Build(benchmark::State& state)
{
    const Formula f = parse(kFormulas[state.range(0)]);
    for (auto _ : state) benchmark::DoNotOptimize(OrdinalAutomaton::build(f).states().size());
}
BENCHMARK(BM_Build)->DenseRange(0, 3);

void BM_Emptiness(benchmark::State& state)
{
    const OrdinalAutomaton a = OrdinalAutomaton::build(parse(kFormulas[2]));
    const auto level = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(a.emptiness(level).fact_count);
}
BENCHMARK(BM_Emptiness)->DenseRange(0, 3);

void BM_EvalRandomWords(benchmark::State& state)
{
    testkit::GenConfig cfg;
    cfg.max_level = static_cast<std::size_t>(state.range(0));
    cfg.max_size = 8;
    const Formula f = parse("G(p -> F q) & (p U (q | X r))");
    std::vector<Word> words;
    for (std::uint64_t i = 0; i < 64; ++i) words.push_back(testkit::gen_word(cfg, i));
    for (auto _ : state)
        for (const Word& w : words) benchmark::DoNotOptimize(eval(f, w));
}
BENCHMARK(BM_EvalRandomWords)->DenseRange(0, 3);

}  // namespace
BENCHMARK_MAIN();
