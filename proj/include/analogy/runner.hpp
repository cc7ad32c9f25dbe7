#pragma once

#include "analogy/generator.hpp"
#include "analogy/gibson.hpp"
#include "analogy/mapper.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace analogy {

enum class Strategy { sme_greedy, sme_optimal, gibson };

std::string_view to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(std::string_view text);
RuleSet default_rules(Strategy strategy);

struct RunOptions {
    Strategy strategy = Strategy::gibson;
    std::optional<RuleSet> rules;  // strategy default when absent
    int fork_cap = 8;
    std::size_t pmap_cap = kDefaultPmapCap;
};

/// Instrumentation for one comparison. Optional fields are absent when the
/// strategy has no such notion.
struct RunReport {
    Strategy strategy = Strategy::gibson;
    RuleSet rules;
    std::size_t total_matches = 0;
    std::size_t valid_matches = 0;
    std::size_t pmap_count = 0;
    std::size_t gmap_count = 0;
    std::size_t best_gmap_size = 0;
    std::int64_t best_gmap_score = 0;
    std::optional<int> cycles_to_best;
    std::optional<int> forks;
    std::optional<double> percent_correct;
    double wall_time_ms = 0.0;
};

struct MappingOutcome {
    RunReport report;
    std::vector<GMap> gmaps;  // ranked by score, best first
};

/// Runs one strategy end to end. When `base` and `target` are the same
/// object the run is a self-map and percent_correct is filled in. Throws
/// MergeBudgetExceeded from the optimal strategy, and std::logic_error if any
/// produced g-map breaks the one-to-one or closure invariants.
MappingOutcome run_mapping(const Domain& base, const Domain& target, const RunOptions& options);

inline MappingOutcome self_map(const Domain& domain, const RunOptions& options)
{
    return run_mapping(domain, domain, options);
}

/// Throws std::logic_error when the report contradicts itself.
void validate(const RunReport& report);

/// `{report, gmaps: [{score, correspondences: [{base, target, kind}], provenance}]}`.
/// wall_time_ms is null unless `include_timing`.
nlohmann::ordered_json to_json(const Domain& base, const Domain& target, const MappingOutcome& outcome,
                               bool include_timing);
nlohmann::ordered_json to_json(const RunReport& report, bool include_timing);

struct BenchConfig {
    std::vector<int> entities{8};
    std::vector<int> facts;  // per-entity-count default when empty: facts = entities
    int max_level = 2;
    int predicate_pool = 4;
    std::vector<double> ambiguity{0.5};
    int instances = 1;
    std::uint64_t seed = 1;
    std::vector<Strategy> strategies{Strategy::gibson};
    std::optional<RuleSet> rules;
    int fork_cap = 8;
    std::size_t pmap_cap = kDefaultPmapCap;
    int workers = 1;
    bool self_map = false;
    bool timing = false;
    int repeats = 5;  // timed repeats; wall time is their median
};

struct BenchRow {
    int instance = 0;
    std::uint64_t seed = 0;
    GeneratorSpec spec;
    Strategy strategy = Strategy::gibson;
    std::optional<RunReport> report;
    std::string error;
};

/// Rows sorted by (instance, strategy order). Failures become rows with
/// `error` set.
std::vector<BenchRow> run_bench(const BenchConfig& config);

std::string bench_csv(const std::vector<BenchRow>& rows, bool include_timing);
nlohmann::ordered_json bench_json(const std::vector<BenchRow>& rows, bool include_timing);
std::string report_csv(const RunReport& report, bool include_timing);

}  // namespace analogy
