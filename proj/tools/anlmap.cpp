// anlmap: command-line front end for the analogy mapping engine.

#include "analogy/generator.hpp"
#include "analogy/parser.hpp"
#include "analogy/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace analogy;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitParse = 2;
constexpr int kExitUnknownDomain = 3;
constexpr int kExitBudget = 4;

struct ExitCode {
    int code;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read '" << path << "'\n";
        throw ExitCode{kExitIo};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        throw ExitCode{kExitIo};
    }
    out << text;
}

ParseResult load_corpus(const std::string& path)
{
    ParseResult parsed = parse_corpus(read_file(path));
    for (const ParseDiagnostic& d : parsed.diagnostics)
        std::cerr << path << ":" << format(d) << "\n";
    if (!parsed.ok())
        throw ExitCode{kExitParse};
    return parsed;
}

const Domain& require_domain(const ParseResult& corpus, const std::string& name)
{
    const Domain* d = corpus.find(name);
    if (!d) {
        std::cerr << "error: no domain named '" << name << "' in corpus\n";
        throw ExitCode{kExitUnknownDomain};
    }
    return *d;
}

std::vector<std::string> split(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

struct RuleFlags {
    std::string pred_rule;
    std::string entity_mode;
    bool strict_functions = false;

    void add_to(CLI::App* cmd)
    {
        cmd->add_option("--pred-rule", pred_rule, "Predicate matching rule")
            ->check(CLI::IsMember({"identical", "free"}));
        cmd->add_option("--entity-mode", entity_mode, "Entity match generation")
            ->check(CLI::IsMember({"sanctioned", "all"}));
        cmd->add_flag("--strict-functions", strict_functions,
                      "Under identical rules, require identical function names even as arguments");
    }

    std::optional<RuleSet> resolve(Strategy strategy) const
    {
        if (pred_rule.empty() && entity_mode.empty() && !strict_functions)
            return std::nullopt;
        RuleSet r = default_rules(strategy);
        if (!pred_rule.empty())
            r.predicate_rule = pred_rule == "identical" ? PredicateRule::identical : PredicateRule::free_for_all;
        if (!entity_mode.empty())
            r.entity_mode = entity_mode == "sanctioned" ? EntityMode::sanctioned_only : EntityMode::all_pairs;
        if (strict_functions)
            r.sanction_functions = false;
        return r;
    }
};

const std::map<std::string, Strategy> kStrategies{
    {"sme-greedy", Strategy::sme_greedy}, {"sme-optimal", Strategy::sme_optimal}, {"gibson", Strategy::gibson}};

int run_map(const std::string& corpus_path, const std::string& base_name, const std::string& target_name,
            const RunOptions& options, const std::string& format_name, bool timing, const std::string& out)
{
    ParseResult corpus = load_corpus(corpus_path);
    const Domain& base = require_domain(corpus, base_name);
    const Domain& target = require_domain(corpus, target_name);
    MappingOutcome outcome;
    try {
        outcome = run_mapping(base, target, options);
    } catch (const MergeBudgetExceeded& e) {
        std::cerr << "error: " << e.what() << " (raise --pmap-cap to allow it)\n";
        return kExitBudget;
    }
    if (format_name == "csv")
        emit(report_csv(outcome.report, timing), out);
    else
        emit(to_json(base, target, outcome, timing).dump(2) + "\n", out);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Structure-mapping analogy engine: parse corpora, map domains, run benchmarks"};
    app.require_subcommand(1);

    // parse
    std::string parse_path;
    std::string out_path;
    auto* parse_cmd = app.add_subcommand("parse", "Validate a corpus and print its canonical form");
    parse_cmd->add_option("corpus", parse_path, "Corpus file (.anl)")->required();
    parse_cmd->add_option("--out", out_path, "Output path (default: stdout)");

    // map / selfmap share most flags
    std::string corpus_path, base_name, target_name, strategy_name = "gibson", format_name = "json";
    int fork_cap = 8;
    std::size_t pmap_cap = kDefaultPmapCap;
    bool timing = false;
    RuleFlags rule_flags;

    auto add_run_flags = [&](CLI::App* cmd) {
        cmd->add_option("--strategy", strategy_name, "sme-greedy | sme-optimal | gibson")
            ->check(CLI::IsMember({"sme-greedy", "sme-optimal", "gibson"}));
        rule_flags.add_to(cmd);
        cmd->add_option("--fork-cap", fork_cap, "Maximum GIBSON branches")->check(CLI::PositiveNumber);
        cmd->add_option("--pmap-cap", pmap_cap, "Maximum consistent p-maps for sme-optimal");
        cmd->add_option("--out", out_path, "Output path (default: stdout)");
        cmd->add_option("--format", format_name, "json | csv")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_flag("--timing", timing, "Include wall-clock times (output is then not reproducible)");
    };

    auto* map_cmd = app.add_subcommand("map", "Map a base domain onto a target domain");
    map_cmd->add_option("corpus", corpus_path, "Corpus file (.anl)")->required();
    map_cmd->add_option("base", base_name, "Base domain name")->required();
    map_cmd->add_option("target", target_name, "Target domain name")->required();
    add_run_flags(map_cmd);

    auto* self_cmd = app.add_subcommand("selfmap", "Map a domain onto itself and score against identity");
    self_cmd->add_option("corpus", corpus_path, "Corpus file (.anl)")->required();
    self_cmd->add_option("domain", base_name, "Domain name")->required();
    add_run_flags(self_cmd);

    // gen
    GeneratorSpec gen_spec;
    std::string gen_name = "generated";
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random domain as .anl text");
    gen_cmd->add_option("--entities", gen_spec.n_entities, "Entity count");
    gen_cmd->add_option("--facts", gen_spec.n_facts, "Fact count");
    gen_cmd->add_option("--max-level", gen_spec.max_level, "Level of the deepest fact");
    gen_cmd->add_option("--pool", gen_spec.predicate_pool, "Shared predicate names per kind/arity");
    gen_cmd->add_option("--ambiguity", gen_spec.ambiguity, "Probability of reusing a shared predicate name");
    gen_cmd->add_option("--seed", gen_spec.seed, "Random seed");
    gen_cmd->add_option("--name", gen_name, "Domain name");
    gen_cmd->add_option("--out", out_path, "Output path (default: stdout)");

    // bench
    BenchConfig bench;
    std::string bench_entities = "8", bench_facts, bench_ambiguity = "0.5", bench_strategies = "gibson";
    std::string bench_format = "csv";
    auto* bench_cmd = app.add_subcommand("bench", "Run strategies over generated instances");
    bench_cmd->add_option("--entities", bench_entities, "Comma-separated entity counts");
    bench_cmd->add_option("--facts", bench_facts, "Comma-separated fact counts (default: equal to entities)");
    bench_cmd->add_option("--max-level", bench.max_level, "Level of the deepest fact");
    bench_cmd->add_option("--pool", bench.predicate_pool, "Shared predicate names per kind/arity");
    bench_cmd->add_option("--ambiguity", bench_ambiguity, "Comma-separated ambiguity values");
    bench_cmd->add_option("--instances", bench.instances, "Instances per configuration");
    bench_cmd->add_option("--seed", bench.seed, "Base seed; instance i uses seed + i");
    bench_cmd->add_option("--strategy", bench_strategies, "Comma-separated strategies");
    rule_flags.add_to(bench_cmd);
    bench_cmd->add_option("--fork-cap", bench.fork_cap, "Maximum GIBSON branches")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--pmap-cap", bench.pmap_cap, "Maximum consistent p-maps for sme-optimal");
    bench_cmd->add_option("--workers", bench.workers, "Concurrent instances")->check(CLI::PositiveNumber);
    bench_cmd->add_flag("--self", bench.self_map, "Self-map each generated domain");
    bench_cmd->add_flag("--timing", bench.timing, "Record median wall time over --repeats runs");
    bench_cmd->add_option("--repeats", bench.repeats, "Timed repeats per row")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--out", out_path, "Output path (default: stdout)");
    bench_cmd->add_option("--format", bench_format, "csv | json")->check(CLI::IsMember({"json", "csv"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*parse_cmd) {
            ParseResult corpus = load_corpus(parse_path);
            emit(serialize(corpus.domains), out_path);
            return 0;
        }
        if (*map_cmd || *self_cmd) {
            RunOptions options;
            options.strategy = kStrategies.at(strategy_name);
            options.rules = rule_flags.resolve(options.strategy);
            options.fork_cap = fork_cap;
            options.pmap_cap = pmap_cap;
            const std::string& target = *self_cmd ? base_name : target_name;
            return run_map(corpus_path, base_name, target, options, format_name, timing, out_path);
        }
        if (*gen_cmd) {
            emit(serialize(generate_domain(gen_spec, gen_name)), out_path);
            return 0;
        }
        if (*bench_cmd) {
            bench.entities.clear();
            for (const auto& s : split(bench_entities))
                bench.entities.push_back(std::stoi(s));
            for (const auto& s : split(bench_facts))
                bench.facts.push_back(std::stoi(s));
            bench.ambiguity.clear();
            for (const auto& s : split(bench_ambiguity))
                bench.ambiguity.push_back(std::stod(s));
            bench.strategies.clear();
            for (const auto& s : split(bench_strategies)) {
                auto it = kStrategies.find(s);
                if (it == kStrategies.end()) {
                    std::cerr << "error: unknown strategy '" << s << "'\n";
                    return kExitIo;
                }
                bench.strategies.push_back(it->second);
            }
            // Rule flags apply uniformly; strategy defaults otherwise.
            bench.rules = rule_flags.resolve(bench.strategies.empty() ? Strategy::gibson : bench.strategies.front());
            std::vector<BenchRow> rows = run_bench(bench);
            if (bench_format == "json")
                emit(bench_json(rows, bench.timing).dump(2) + "\n", out_path);
            else
                emit(bench_csv(rows, bench.timing), out_path);
            return 0;
        }
    } catch (const ExitCode& e) {
        return e.code;
    } catch (const InfeasibleSpec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
