#include "analogy/runner.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace analogy;

namespace {

std::size_t count_fields(const std::string& line)
{
    std::size_t n = 1;
    bool quoted = false;
    for (char c : line) {
        if (c == '"')
            quoted = !quoted;
        else if (c == ',' && !quoted)
            ++n;
    }
    return n;
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("strategy names")
{
    for (Strategy s : {Strategy::sme_greedy, Strategy::sme_optimal, Strategy::gibson})
        CHECK(parse_strategy(to_string(s)) == s);
    CHECK_FALSE(parse_strategy("sme"));
    CHECK(default_rules(Strategy::gibson).predicate_rule == PredicateRule::free_for_all);
    CHECK(default_rules(Strategy::sme_greedy).entity_mode == EntityMode::sanctioned_only);
}

TEST_CASE("report and JSON layout for the flow analogy")
{
    auto corpus = oracle::load_classics();
    const Domain& w = *corpus.find("water-flow");
    const Domain& h = *corpus.find("heat-flow");

    RunOptions opts;
    opts.strategy = Strategy::sme_greedy;
    MappingOutcome o = run_mapping(w, h, opts);
    CHECK(o.report.pmap_count == 4);
    CHECK(o.report.gmap_count == 3);
    CHECK(o.report.best_gmap_score == 17);
    CHECK_FALSE(o.report.cycles_to_best);
    CHECK_FALSE(o.report.percent_correct);

    auto j = to_json(w, h, o, false);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j["report"].items())
        keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"strategy", "rules", "total_matches", "valid_matches", "pmap_count",
                                           "gmap_count", "best_gmap_size", "best_gmap_score", "cycles_to_best",
                                           "forks", "percent_correct", "wall_time_ms"});
    CHECK(j["report"]["wall_time_ms"].is_null());
    CHECK(j["report"]["rules"]["predicate_rule"] == "identical");
    CHECK(j["gmaps"].size() == 3);
    const auto& first = j["gmaps"][0];
    CHECK(first["score"] == 17);
    bool found = false;
    for (const auto& c : first["correspondences"])
        found |= c["base"] == "pressure(beaker)" && c["target"] == "temperature(coffee)" && c["kind"] == "expression";
    CHECK(found);
    CHECK(to_json(w, h, o, true)["report"]["wall_time_ms"].is_number());

    opts.strategy = Strategy::gibson;
    MappingOutcome g = run_mapping(w, h, opts);
    CHECK(g.report.cycles_to_best);
    CHECK(g.report.forks);
    CHECK(to_json(w, h, g, false).dump() == to_json(w, h, run_mapping(w, h, opts), false).dump());
}

TEST_CASE("self-map reports percent correct")
{
    auto corpus = oracle::load_classics();
    for (Strategy s : {Strategy::sme_optimal, Strategy::gibson}) {
        RunOptions opts;
        opts.strategy = s;
        opts.rules = RuleSet::sme_default();
        MappingOutcome o = self_map(*corpus.find("atom"), opts);
        REQUIRE(o.report.percent_correct);
        CHECK(*o.report.percent_correct == 100.0);
    }
}

TEST_CASE("optimal strategy propagates the cap error")
{
    auto corpus = oracle::load_classics();
    RunOptions opts;
    opts.strategy = Strategy::sme_optimal;
    opts.pmap_cap = 1;
    CHECK_THROWS_AS(run_mapping(*corpus.find("water-flow"), *corpus.find("heat-flow"), opts), MergeBudgetExceeded);
}

TEST_CASE("validate rejects contradictory reports")
{
    RunReport r;
    r.total_matches = 3;
    r.valid_matches = 4;
    CHECK_THROWS_AS(validate(r), std::logic_error);
    r.valid_matches = 2;
    r.percent_correct = 101.0;
    CHECK_THROWS_AS(validate(r), std::logic_error);
    r.percent_correct = 50.0;
    CHECK_NOTHROW(validate(r));
}

TEST_CASE("bench CSV is reproducible and independent of worker count")
{
    BenchConfig config;
    config.entities = {4, 6};
    config.ambiguity = {0.0, 0.5};
    config.instances = 2;
    config.seed = 11;
    config.strategies = {Strategy::sme_greedy, Strategy::sme_optimal, Strategy::gibson};
    config.workers = 1;
    auto rows = run_bench(config);
    CHECK(rows.size() == 2 * 2 * 2 * 3);
    std::string one = bench_csv(rows, false);
    config.workers = 4;
    std::string four = bench_csv(run_bench(config), false);
    CHECK(one == four);

    auto ls = lines(one);
    REQUIRE(ls.size() == rows.size() + 1);
    for (const auto& l : ls)
        CHECK(count_fields(l) == count_fields(ls[0]));
    CHECK(ls[0].rfind("instance,seed,n_entities", 0) == 0);
    CHECK(bench_json(rows, false).size() == rows.size());
}

TEST_CASE("cap overflow becomes an error row")
{
    BenchConfig config;
    config.entities = {10};
    config.facts = {10};
    config.ambiguity = {1.0};
    config.predicate_pool = 1;
    config.max_level = 1;
    config.strategies = {Strategy::sme_optimal, Strategy::gibson};
    config.pmap_cap = 1;
    auto rows = run_bench(config);
    REQUIRE(rows.size() == 2);
    CHECK_FALSE(rows[0].report);
    CHECK(rows[0].error.find("p-map") != std::string::npos);
    CHECK(rows[1].report);
    CHECK(rows[1].error.empty());
    auto ls = lines(bench_csv(rows, false));
    CHECK(count_fields(ls[1]) == count_fields(ls[0]));
}

TEST_CASE("report CSV")
{
    RunReport r;
    r.strategy = Strategy::sme_optimal;
    r.total_matches = 7;
    std::string csv = report_csv(r, false);
    auto ls = lines(csv);
    REQUIRE(ls.size() == 2);
    CHECK(ls[1].rfind("sme-optimal,identical,sanctioned-only,7,", 0) == 0);
    CHECK(ls[1].back() == ',');
    CHECK(count_fields(ls[0]) == count_fields(ls[1]));
}
