#include "analogy/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <thread>

namespace analogy {

std::string_view to_string(Strategy strategy)
{
    switch (strategy) {
    case Strategy::sme_greedy: return "sme-greedy";
    case Strategy::sme_optimal: return "sme-optimal";
    case Strategy::gibson: return "gibson";
    }
    return "gibson";
}

std::optional<Strategy> parse_strategy(std::string_view text)
{
    for (Strategy s : {Strategy::sme_greedy, Strategy::sme_optimal, Strategy::gibson})
        if (to_string(s) == text)
            return s;
    return std::nullopt;
}

RuleSet default_rules(Strategy strategy)
{
    return strategy == Strategy::gibson ? RuleSet::gibson_default() : RuleSet::sme_default();
}

namespace {

void check_gmap(const MatchSet& matches, const GMap& g)
{
    if (!is_one_to_one(matches, g.members))
        throw std::logic_error("g-map violates the one-to-one constraint");
    if (!is_closed(matches, g.members))
        throw std::logic_error("g-map is not closed under argument matches");
    if (g.score != score_of(matches, g.members))
        throw std::logic_error("g-map score does not match its members");
}

std::string number(double v)
{
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

std::string csv_field(const std::string& text)
{
    if (text.find_first_of(",\"\n") == std::string::npos)
        return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

MappingOutcome run_mapping(const Domain& base, const Domain& target, const RunOptions& options)
{
    using clock = std::chrono::steady_clock;
    MappingOutcome out;
    RunReport& r = out.report;
    r.strategy = options.strategy;
    r.rules = options.rules.value_or(default_rules(options.strategy));

    auto start = clock::now();
    MatchSet matches = generate_matches(base, target, r.rules);
    std::vector<PMap> pmaps = build_pmaps(matches);
    switch (options.strategy) {
    case Strategy::sme_greedy:
        out.gmaps = greedy_merge(matches, pmaps);
        std::stable_sort(out.gmaps.begin(), out.gmaps.end(),
                         [](const GMap& a, const GMap& b) { return a.score > b.score; });
        break;
    case Strategy::sme_optimal: {
        GMap best = optimal_merge(matches, pmaps, options.pmap_cap);
        if (!best.members.empty())
            out.gmaps.push_back(std::move(best));
        break;
    }
    case Strategy::gibson: {
        GibsonOptions go;
        go.fork_cap = options.fork_cap;
        GibsonResult g = gibson_map(matches, go);
        out.gmaps = std::move(g.gmaps);
        r.cycles_to_best = g.cycles_to_best;
        r.forks = g.forks_taken;
        break;
    }
    }
    r.wall_time_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();

    for (const GMap& g : out.gmaps)
        check_gmap(matches, g);
    r.total_matches = matches.total();
    r.valid_matches = matches.valid_count();
    r.pmap_count = pmaps.size();
    r.gmap_count = out.gmaps.size();
    if (!out.gmaps.empty()) {
        r.best_gmap_size = out.gmaps.front().members.size();
        r.best_gmap_score = out.gmaps.front().score;
    }
    if (&base == &target)
        r.percent_correct = percent_correct(matches, out.gmaps.empty() ? GMap{} : out.gmaps.front());
    validate(r);
    return out;
}

void validate(const RunReport& r)
{
    if (r.valid_matches > r.total_matches)
        throw std::logic_error("report: valid_matches exceeds total_matches");
    if (r.best_gmap_size > r.valid_matches)
        throw std::logic_error("report: best_gmap_size exceeds valid_matches");
    if (r.percent_correct && (*r.percent_correct < 0.0 || *r.percent_correct > 100.0))
        throw std::logic_error("report: percent_correct out of range");
}

nlohmann::ordered_json to_json(const RunReport& r, bool include_timing)
{
    nlohmann::ordered_json j;
    j["strategy"] = std::string(to_string(r.strategy));
    j["rules"] = {{"predicate_rule", std::string(to_string(r.rules.predicate_rule))},
                  {"entity_mode", std::string(to_string(r.rules.entity_mode))},
                  {"sanction_functions", r.rules.sanction_functions}};
    j["total_matches"] = r.total_matches;
    j["valid_matches"] = r.valid_matches;
    j["pmap_count"] = r.pmap_count;
    j["gmap_count"] = r.gmap_count;
    j["best_gmap_size"] = r.best_gmap_size;
    j["best_gmap_score"] = r.best_gmap_score;
    j["cycles_to_best"] = r.cycles_to_best ? nlohmann::ordered_json(*r.cycles_to_best) : nullptr;
    j["forks"] = r.forks ? nlohmann::ordered_json(*r.forks) : nullptr;
    j["percent_correct"] = r.percent_correct ? nlohmann::ordered_json(*r.percent_correct) : nullptr;
    j["wall_time_ms"] = include_timing ? nlohmann::ordered_json(r.wall_time_ms) : nullptr;
    return j;
}

nlohmann::ordered_json to_json(const Domain& base, const Domain& target, const MappingOutcome& outcome,
                               bool include_timing)
{
    nlohmann::ordered_json j;
    j["report"] = to_json(outcome.report, include_timing);
    j["gmaps"] = nlohmann::ordered_json::array();
    for (const GMap& g : outcome.gmaps) {
        nlohmann::ordered_json gj;
        gj["score"] = g.score;
        gj["correspondences"] = nlohmann::ordered_json::array();
        for (const auto& [b, t] : g.correspondences) {
            gj["correspondences"].push_back({{"base", base.render(b)},
                                             {"target", target.render(t)},
                                             {"kind", base.element(b).is_entity() ? "entity" : "expression"}});
        }
        gj["provenance"] = g.provenance;
        j["gmaps"].push_back(std::move(gj));
    }
    return j;
}

std::vector<BenchRow> run_bench(const BenchConfig& config)
{
    struct Task {
        int instance;
        GeneratorSpec spec;
    };
    std::vector<Task> tasks;
    int next_id = 0;
    for (std::size_t ei = 0; ei < config.entities.size(); ++ei) {
        std::vector<int> facts = config.facts.empty() ? std::vector<int>{config.entities[ei]} : config.facts;
        for (int nf : facts) {
            for (double amb : config.ambiguity) {
                for (int k = 0; k < config.instances; ++k) {
                    GeneratorSpec s;
                    s.n_entities = config.entities[ei];
                    s.n_facts = nf;
                    s.max_level = config.max_level;
                    s.predicate_pool = config.predicate_pool;
                    s.ambiguity = amb;
                    s.seed = config.seed + static_cast<std::uint64_t>(next_id);
                    tasks.push_back({next_id++, s});
                }
            }
        }
    }

    const std::size_t per_task = config.strategies.size();
    std::vector<BenchRow> rows(tasks.size() * per_task);
    std::atomic<std::size_t> cursor{0};

    auto work = [&] {
        for (;;) {
            std::size_t ti = cursor.fetch_add(1);
            if (ti >= tasks.size())
                return;
            const Task& task = tasks[ti];
            std::optional<Domain> base;
            std::optional<Domain> target;
            std::string gen_error;
            try {
                GeneratorSpec bs = task.spec;
                bs.seed = task.spec.seed * 2;
                base = generate_domain(bs, "base");
                if (!config.self_map) {
                    GeneratorSpec ts = task.spec;
                    ts.seed = task.spec.seed * 2 + 1;
                    target = generate_domain(ts, "target");
                }
            } catch (const std::exception& e) {
                gen_error = e.what();
            }
            for (std::size_t si = 0; si < per_task; ++si) {
                BenchRow& row = rows[ti * per_task + si];
                row.instance = task.instance;
                row.seed = task.spec.seed;
                row.spec = task.spec;
                row.strategy = config.strategies[si];
                if (!gen_error.empty()) {
                    row.error = gen_error;
                    continue;
                }
                RunOptions opts;
                opts.strategy = row.strategy;
                opts.rules = config.rules;
                opts.fork_cap = config.fork_cap;
                opts.pmap_cap = config.pmap_cap;
                const Domain& b = *base;
                const Domain& t = config.self_map ? *base : *target;
                try {
                    MappingOutcome o = run_mapping(b, t, opts);
                    if (config.timing && config.repeats > 1) {
                        std::vector<double> times{o.report.wall_time_ms};
                        for (int rep = 1; rep < config.repeats; ++rep)
                            times.push_back(run_mapping(b, t, opts).report.wall_time_ms);
                        std::sort(times.begin(), times.end());
                        o.report.wall_time_ms = times[times.size() / 2];
                    }
                    row.report = o.report;
                } catch (const std::exception& e) {
                    row.error = e.what();
                }
            }
        }
    };

    int n_workers = std::max(1, config.workers);
    std::vector<std::thread> pool;
    for (int w = 1; w < n_workers; ++w)
        pool.emplace_back(work);
    work();
    for (std::thread& t : pool)
        t.join();
    return rows;
}

namespace {

const char* kReportHeader =
    "strategy,predicate_rule,entity_mode,total_matches,valid_matches,pmap_count,gmap_count,"
    "best_gmap_size,best_gmap_score,cycles_to_best,forks,percent_correct,wall_time_ms";

std::string report_fields(const RunReport& r, bool include_timing)
{
    std::string s;
    s += std::string(to_string(r.strategy)) + ",";
    s += std::string(to_string(r.rules.predicate_rule)) + ",";
    s += std::string(to_string(r.rules.entity_mode)) + ",";
    s += std::to_string(r.total_matches) + ",";
    s += std::to_string(r.valid_matches) + ",";
    s += std::to_string(r.pmap_count) + ",";
    s += std::to_string(r.gmap_count) + ",";
    s += std::to_string(r.best_gmap_size) + ",";
    s += std::to_string(r.best_gmap_score) + ",";
    s += (r.cycles_to_best ? std::to_string(*r.cycles_to_best) : "") + ",";
    s += (r.forks ? std::to_string(*r.forks) : "") + ",";
    s += (r.percent_correct ? number(*r.percent_correct) : "") + ",";
    s += include_timing ? number(r.wall_time_ms) : "";
    return s;
}

}  // namespace

std::string report_csv(const RunReport& report, bool include_timing)
{
    return std::string(kReportHeader) + "\n" + report_fields(report, include_timing) + "\n";
}

std::string bench_csv(const std::vector<BenchRow>& rows, bool include_timing)
{
    std::string out = "instance,seed,n_entities,n_facts,max_level,predicate_pool,ambiguity,";
    out += kReportHeader;
    out += ",error\n";
    for (const BenchRow& row : rows) {
        out += std::to_string(row.instance) + "," + std::to_string(row.seed) + ",";
        out += std::to_string(row.spec.n_entities) + "," + std::to_string(row.spec.n_facts) + ",";
        out += std::to_string(row.spec.max_level) + "," + std::to_string(row.spec.predicate_pool) + ",";
        out += number(row.spec.ambiguity) + ",";
        if (row.report) {
            out += report_fields(*row.report, include_timing);
        } else {
            out += std::string(to_string(row.strategy)) + ",,,,,,,,,,,,";
        }
        out += "," + csv_field(row.error) + "\n";
    }
    return out;
}

nlohmann::ordered_json bench_json(const std::vector<BenchRow>& rows, bool include_timing)
{
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const BenchRow& row : rows) {
        nlohmann::ordered_json j;
        j["instance"] = row.instance;
        j["seed"] = row.seed;
        j["generator"] = {{"n_entities", row.spec.n_entities}, {"n_facts", row.spec.n_facts},
                          {"max_level", row.spec.max_level},   {"predicate_pool", row.spec.predicate_pool},
                          {"ambiguity", row.spec.ambiguity},   {"seed", row.spec.seed}};
        j["strategy"] = std::string(to_string(row.strategy));
        j["report"] = row.report ? to_json(*row.report, include_timing) : nlohmann::ordered_json(nullptr);
        j["error"] = row.error.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(row.error);
        out.push_back(std::move(j));
    }
    return out;
}

}  // namespace analogy
