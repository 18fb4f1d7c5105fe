#include "ordltl/testkit.hpp"

#include "ordltl/json_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace ordltl::testkit {

namespace {

constexpr std::uint64_t kFormulaStream = 1;
constexpr std::uint64_t kWordStream = 2;
constexpr std::uint64_t kLassoStream = 3;
constexpr std::uint64_t kNaiveStream = 4;

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

bool chance(std::mt19937_64& rng, double p)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

}  // namespace

void GenConfig::validate() const
{
    if (max_size == 0) throw std::invalid_argument("max_size must be positive");
    if (prop_count == 0 || prop_count > 3) throw std::invalid_argument("prop_count must be 1..3");
    if (max_level > 2) throw std::invalid_argument("max_level must be 0..2");
    if (case_count == 0) throw std::invalid_argument("case_count must be positive");
}

std::mt19937_64 engine_for(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
{
    return std::mt19937_64{splitmix64(seed ^ splitmix64(stream ^ splitmix64(index)))};
}

std::vector<Proposition> generator_props(std::size_t count)
{
    static const char* names[] = {"p", "q", "r"};
    std::vector<Proposition> out;
    for (std::size_t i = 0; i < count && i < 3; ++i) out.emplace_back(names[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Formulas

namespace {

Formula formula_of_size(std::mt19937_64& rng, const std::vector<Proposition>& props,
                        std::size_t size)
{
    if (size <= 1) {
        if (chance(rng, 0.2)) return Formula::top();
        return Formula::atom(props[below(rng, props.size())]);
    }
    if (size == 2) {
        const Formula leaf = formula_of_size(rng, props, 1);
        return chance(rng, 0.5) ? Formula::negate(leaf) : Formula::next(leaf);
    }
    const std::uint64_t pick = below(rng, 10);
    if (pick < 2) return Formula::negate(formula_of_size(rng, props, size - 1));
    if (pick < 4) return Formula::next(formula_of_size(rng, props, size - 1));
    const std::size_t left = 1 + below(rng, size - 2);
    const Formula a = formula_of_size(rng, props, left);
    const Formula b = formula_of_size(rng, props, size - 1 - left);
    return pick < 7 ? Formula::conj(a, b) : Formula::until(a, b);
}

Letter random_letter(std::mt19937_64& rng, const std::vector<Proposition>& props)
{
    Letter l;
    for (const Proposition& p : props)
        if (chance(rng, 0.5)) l.insert(p);
    return l;
}

Word word_of(std::mt19937_64& rng, const std::vector<Proposition>& props, std::size_t level,
             std::size_t letters)
{
    if (level > 0 && chance(rng, 0.4)) return Word::omega(word_of(rng, props, level - 1, letters));
    if (letters >= 2 && chance(rng, 0.6)) {
        const std::size_t first = 1 + below(rng, letters - 1);
        const std::size_t rest = 1 + below(rng, letters - first);
        return Word::cat({word_of(rng, props, level, first), word_of(rng, props, level, rest)});
    }
    return Word::single(random_letter(rng, props));
}

}  // namespace

Formula gen_formula(const GenConfig& cfg, std::uint64_t i)
{
    auto rng = engine_for(cfg.seed, kFormulaStream, i);
    const std::size_t size = 1 + below(rng, cfg.max_size);
    return formula_of_size(rng, generator_props(cfg.prop_count), size);
}

Word gen_word(const GenConfig& cfg, std::uint64_t i)
{
    auto rng = engine_for(cfg.seed, kWordStream, i);
    const std::size_t letters = 1 + below(rng, cfg.max_size);
    return word_of(rng, generator_props(cfg.prop_count), cfg.max_level, letters);
}

std::vector<Letter> all_letters(const std::vector<Proposition>& props)
{
    std::vector<Letter> out;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << props.size()); ++k) {
        Letter l;
        for (std::size_t j = 0; j < props.size(); ++j)
            if ((k >> j) & 1u) l.insert(props[j]);
        out.push_back(std::move(l));
    }
    return out;
}

std::optional<Word> exhaustive_finite_model(const Formula& f, std::size_t max_length)
{
    // Valuations at the first position of every word of a given length; a
    // word is kept per distinct valuation, which covers all words because the
    // valuation of a longer word depends only on its first letter and the
    // valuation of the rest.
    Evaluator ev(f);
    const std::size_t root = ev.closure().index_of(f);
    const std::vector<Letter> letters = all_letters(propositions(f));

    std::vector<std::pair<Valuation, std::vector<const Letter*>>> layer;
    std::set<Valuation> seen_layer;
    for (const Letter& l : letters) {
        Valuation v = ev.step(l, std::nullopt);
        if (seen_layer.insert(v).second) layer.push_back({std::move(v), {&l}});
    }
    for (std::size_t len = 1; len <= max_length; ++len) {
        for (const auto& [v, spelled] : layer) {
            if (!v[root]) continue;
            std::vector<Word> parts;
            for (const Letter* l : spelled) parts.push_back(Word::single(*l));
            return Word::cat(parts);
        }
        if (len == max_length) break;
        std::vector<std::pair<Valuation, std::vector<const Letter*>>> next;
        std::set<Valuation> seen;
        for (const auto& [v, spelled] : layer) {
            for (const Letter& l : letters) {
                Valuation w = ev.step(l, v);
                if (!seen.insert(w).second) continue;
                std::vector<const Letter*> longer{&l};
                longer.insert(longer.end(), spelled.begin(), spelled.end());
                next.push_back({std::move(w), std::move(longer)});
            }
        }
        layer = std::move(next);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Harness

CaseRecord run_case(const GenConfig& cfg, std::uint64_t i, const HarnessOptions& opts)
{
    CaseRecord rec;
    rec.i = i;
    const Formula f = opts.conjunct ? Formula::conj(gen_formula(cfg, i), *opts.conjunct)
                                    : gen_formula(cfg, i);
    rec.formula = render(f);

    auto fail = [&](std::string detail) {
        rec.ok = false;
        if (!rec.detail.empty()) rec.detail += "; ";
        rec.detail += detail;
    };

    Evaluator ev(f);
    // eval against the naive evaluator on finite draws
    for (std::size_t k = 0; k < opts.naive_draws; ++k) {
        auto rng = engine_for(cfg.seed, kNaiveStream, i * 1'000'003ull + k);
        const Word w = word_of(rng, generator_props(cfg.prop_count), 0, 1 + below(rng, 6));
        if (ev.eval(w) != eval_naive_finite(f, w, 0)) {
            fail("eval and eval_naive_finite disagree on " + word_to_json(w));
            break;
        }
    }

    Verdict v;
    try {
        v = satisfiable(f, opts.solver_level, opts.solver);
    } catch (const std::exception& e) {
        rec.status = "ERROR";
        fail(e.what());
        return rec;
    }
    rec.status = to_string(v.status);

    if (v.sat()) {
        rec.level = v.level;
        if (!eval(f, *v.witness)) fail("witness " + word_to_json(*v.witness) + " fails eval");
        else if (rec.detail.empty()) rec.detail = "witness " + word_to_json(*v.witness);
        return rec;
    }

    if (auto m = exhaustive_finite_model(f, opts.finite_search_length)) {
        fail("UNSAT but finite word " + word_to_json(*m) + " is a model");
        return rec;
    }
    GenConfig lasso_cfg;
    lasso_cfg.seed = cfg.seed;
    lasso_cfg.prop_count = cfg.prop_count;
    lasso_cfg.max_level = opts.lasso_max_level;
    lasso_cfg.max_size = opts.lasso_max_letters;
    for (std::size_t k = 0; k < opts.lasso_draws; ++k) {
        auto rng = engine_for(cfg.seed, kLassoStream, i * 1'000'003ull + k);
        const Word w = word_of(rng, generator_props(cfg.prop_count), lasso_cfg.max_level,
                               1 + below(rng, lasso_cfg.max_size));
        if (ev.eval(w)) {
            fail("UNSAT but lasso word " + word_to_json(w) + " is a model");
            return rec;
        }
        if (k % 64 == 63) ev.clear_memo();
    }
    if (rec.detail.empty()) rec.detail = "no model found by sampling";
    return rec;
}

namespace {

std::vector<CaseRecord> run_all(const GenConfig& cfg, const HarnessOptions& opts,
                                bool stop_at_failure)
{
    std::vector<CaseRecord> out(cfg.case_count);
    std::size_t threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
    threads = std::clamp<std::size_t>(threads, 1, cfg.case_count);
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    auto work = [&] {
        for (;;) {
            if (stop_at_failure && failed.load()) return;
            const std::uint64_t i = next.fetch_add(1);
            if (i >= cfg.case_count) return;
            out[i] = run_case(cfg, i, opts);
            if (!out[i].ok) failed.store(true);
        }
    };
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    pool.clear();
    return out;
}

}  // namespace

Report differential_run(const GenConfig& cfg, const HarnessOptions& opts)
{
    cfg.validate();
    Report rep;
    rep.config = cfg;
    rep.cases = run_all(cfg, opts, false);
    for (const CaseRecord& c : rep.cases) {
        if (!c.ok) ++rep.failures;
        if (c.status == "SAT") {
            ++rep.sat;
            if (c.level && (!rep.max_sat_level || *c.level > *rep.max_sat_level))
                rep.max_sat_level = c.level;
        } else if (c.status == "UNSAT") {
            ++rep.unsat;
        }
    }

    if (rep.failures > 0 && opts.shrink) {
        // Smallest failing case within the generated family: the first
        // failure in index order at the smallest size that still fails.
        for (const CaseRecord& c : rep.cases)
            if (!c.ok) {
                rep.minimal_failure = c;
                rep.minimal_failure_size = cfg.max_size;
                break;
            }
        for (std::size_t size = cfg.max_size; size-- > 1;) {
            GenConfig smaller = cfg;
            smaller.max_size = size;
            const auto cases = run_all(smaller, opts, true);
            auto it = std::find_if(cases.begin(), cases.end(),
                                   [](const CaseRecord& c) { return !c.ok && !c.formula.empty(); });
            if (it == cases.end()) break;
            rep.minimal_failure = *it;
            rep.minimal_failure_size = size;
        }
    }
    return rep;
}

std::string Report::to_jsonl() const
{
    using nlohmann::ordered_json;
    std::string out;
    for (const CaseRecord& c : cases) {
        ordered_json j;
        j["i"] = c.i;
        j["formula"] = c.formula;
        j["status"] = c.status;
        j["ok"] = c.ok;
        j["detail"] = c.detail;
        out += j.dump() + "\n";
    }
    ordered_json s;
    s["schemaVersion"] = kSchemaVersion;
    s["summary"] = true;
    s["seed"] = config.seed;
    s["caseCount"] = config.case_count;
    s["maxSize"] = config.max_size;
    s["propCount"] = config.prop_count;
    s["failures"] = failures;
    s["sat"] = sat;
    s["unsat"] = unsat;
    s["maxSatLevel"] = max_sat_level ? ordered_json(*max_sat_level) : ordered_json(nullptr);
    if (minimal_failure) {
        s["minimalFailure"] = {{"maxSize", *minimal_failure_size},
                               {"i", minimal_failure->i},
                               {"formula", minimal_failure->formula},
                               {"detail", minimal_failure->detail}};
    }
    s["note"] = "UNSAT verdicts are corroborated by sampling and bounded finite search, not proved";
    out += s.dump() + "\n";
    return out;
}

}  // namespace ordltl::testkit
