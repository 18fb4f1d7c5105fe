#include "cli.hpp"

#include "ordltl/automaton.hpp"
#include "ordltl/eval.hpp"
#include "ordltl/json_io.hpp"
#include "ordltl/solver.hpp"
#include "ordltl/testkit.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace ordltl::cli {

namespace {

struct CliConfig {
    std::optional<std::uint32_t> max_level;
    std::string format = "text";
    std::uint64_t seed = 42;
    std::string witness_out;
    bool timing = false;
};

/// ORDLTL_MAX_STATES overrides the complement-pair bound of the automaton.
AutomatonOptions automaton_options()
{
    AutomatonOptions opts;
    if (const char* env = std::getenv("ORDLTL_MAX_STATES"); env && *env) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0') opts.max_pairs = v;
    }
    return opts;
}

void print_verdict_text(std::ostream& out, const Verdict& v, bool timing)
{
    if (v.sat()) {
        out << "SAT (level " << *v.level << ", bound " << to_string(v.bound()) << ")\n";
        out << "witness: " << to_string(*v.witness) << "\n";
        out << "length: " << to_string(v.witness->length()) << "\n";
    } else {
        out << "UNSAT (no model shorter than " << to_string(v.bound()) << ")\n";
    }
    out << "states: " << v.stats.state_count << ", facts: " << v.stats.fact_count;
    if (timing) out << ", elapsed: " << v.stats.elapsed_millis << " ms";
    out << "\n";
}

std::optional<std::string> read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_sat(const std::string& text, const CliConfig& cfg, std::ostream& out, std::ostream& err)
{
    const Formula f = parse(text);
    const std::uint32_t level = cfg.max_level.value_or(default_max_level(f));
    SolverOptions opts;
    opts.automaton = automaton_options();
    const Verdict v = satisfiable(f, level, opts);
    if (cfg.format == "json")
        out << verdict_to_json(v, cfg.timing) << "\n";
    else
        print_verdict_text(out, v, cfg.timing);
    if (!cfg.witness_out.empty() && v.witness) {
        std::ofstream file(cfg.witness_out, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << cfg.witness_out << "\n";
            return kBadInput;
        }
        file << word_to_json(*v.witness) << "\n";
    }
    return kOk;
}

int cmd_eval(const std::string& text, const std::string& path, const CliConfig& cfg,
             std::ostream& out, std::ostream& err)
{
    const Formula f = parse(text);
    const auto contents = read_file(path);
    if (!contents) {
        err << "error: cannot read word file " << path << "\n";
        return kBadInput;
    }
    const Word w = word_from_json(*contents);
    const bool value = eval(f, w);
    if (cfg.format == "json") {
        nlohmann::ordered_json j;
        j["schemaVersion"] = kSchemaVersion;
        j["value"] = value;
        j["length"] = to_string(w.length());
        out << j.dump() << "\n";
    } else {
        out << (value ? "true" : "false") << "\n";
    }
    return kOk;
}

int cmd_dot(const std::string& text, std::ostream& out)
{
    const OrdinalAutomaton a = OrdinalAutomaton::build(parse(text), automaton_options());
    out << a.to_dot();
    return kOk;
}

int cmd_check(const testkit::GenConfig& gen, testkit::HarnessOptions opts, bool mutant,
              std::ostream& out)
{
    opts.solver.automaton = automaton_options();
    opts.solver.automaton.mutate_limit_rule_a = mutant;
    const testkit::Report rep = testkit::differential_run(gen, opts);
    out << rep.to_jsonl();
    return rep.failures == 0 ? kOk : kCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Satisfiability and model checking for LTL over ordinal words", "ordltl"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string formula;
    std::string word_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--max-level", cfg.max_level, "Search words shorter than w^(K+1)")
            ->check(CLI::Range(0u, kMaxLevelLimit));
        sub->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--seed", cfg.seed, "Random seed");
    };

    CLI::App* sat = app.add_subcommand("sat", "Decide satisfiability and print a witness");
    sat->add_option("formula", formula, "Formula")->required();
    add_common(sat);
    sat->add_option("--witness-out", cfg.witness_out, "Write the witness word as JSON");
    sat->add_flag("--timing", cfg.timing, "Report elapsed time (output is then not reproducible)");

    CLI::App* ev = app.add_subcommand("eval", "Evaluate a formula on a word file");
    ev->add_option("formula", formula, "Formula")->required();
    ev->add_option("word", word_path, "JSON word file")->required();
    add_common(ev);

    CLI::App* dot = app.add_subcommand("dot", "Print the successor graph in DOT");
    dot->add_option("formula", formula, "Formula")->required();
    add_common(dot);

    testkit::GenConfig gen;
    testkit::HarnessOptions harness;
    std::string mutant;
    CLI::App* check = app.add_subcommand("check", "Run the differential harness");
    add_common(check);
    check->add_option("--cases", gen.case_count, "Number of random formulas");
    check->add_option("--max-size", gen.max_size, "Largest formula size");
    check->add_option("--props", gen.prop_count, "Propositions (1..3)");
    check->add_option("--threads", harness.threads, "Worker threads (0: all cores)");
    check->add_option("--lasso-draws", harness.lasso_draws, "Random lasso words per UNSAT case");
    std::string conjoin;
    check->add_option("--conjoin", conjoin, "Conjoin this formula to every generated one");
    check->add_option("--inject-mutant", mutant, "Seeded defect for mutation testing")
        ->check(CLI::IsMember({"limit-a"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadInput;
    }

    try {
        if (*sat) return cmd_sat(formula, cfg, out, err);
        if (*ev) return cmd_eval(formula, word_path, cfg, out, err);
        if (*dot) return cmd_dot(formula, out);
        if (*check) {
            gen.seed = cfg.seed;
            if (cfg.max_level) harness.solver_level = *cfg.max_level;
            gen.validate();
            if (!conjoin.empty()) {
                formula = conjoin;
                harness.conjunct = parse(conjoin);
            }
            return cmd_check(gen, harness, mutant == "limit-a", out);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        if (!formula.empty() && e.position() >= 1) {
            err << "  " << formula << "\n  " << std::string(e.position() - 1, ' ') << "^\n";
        }
        return kBadInput;
    } catch (const WordFormatError& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const StateExplosion& e) {
        err << "error: " << e.what() << "\n";
        return kRefused;
    } catch (const WitnessValidationFailure& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const InternalInconsistency& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }
    return kBadInput;
}

}  // namespace ordltl::cli
