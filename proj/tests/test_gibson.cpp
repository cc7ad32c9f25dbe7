#include "analogy/generator.hpp"
#include "analogy/gibson.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace analogy;

namespace {

std::set<oracle::Pair> known_pairs(const MatchSet& ms, const GibsonState& state)
{
    std::set<oracle::Pair> out;
    for (MatchId id : state.known())
        out.emplace(ms[id].base, ms[id].target);
    return out;
}

void check_terms(const MatchSet& ms, const GibsonState& state)
{
    auto known = known_pairs(ms, state);
    for (const auto& m : ms.matches()) {
        if (!m.valid)
            continue;
        GibsonScore s = best_map_potential(m, state, ms);
        oracle::Terms o = oracle::potential(ms.base(), ms.target(), m.base, m.target, known);
        CAPTURE(ms.base().render(m.base));
        CAPTURE(ms.target().render(m.target));
        CHECK(s.am_size == o.am);
        CHECK(s.min_level == o.min_level);
        CHECK(s.freq_b == o.freq_b);
        CHECK(s.freq_t == o.freq_t);
        CHECK(s.rootedness == o.rooted);
        CHECK(s.new_times_known == o.dynamic);
        CHECK(s.total == o.total());
        CHECK(s.total == s.am_size + s.min_level + s.freq_b + s.freq_t + s.rootedness + s.new_times_known);
    }
}

void check_gmap(const MatchSet& ms, const GMap& g)
{
    CHECK(is_one_to_one(ms, g.members));
    CHECK(is_closed(ms, g.members));
}

}  // namespace

TEST_CASE("cycle-one potential of a rooted level-2 relation match")
{
    auto r = oracle::parse_ok("domain b { relation r/2; function f/1; facts: r(f(a), b); }\n"
                              "domain t { relation r/2; function f/1; facts: r(f(x), y); }");
    MatchSet ms = generate_matches(r.domains[0], r.domains[1], RuleSet::sme_default());
    GibsonState empty(ms);
    auto id = ms.find(r.domains[0].facts()[0], r.domains[1].facts()[0]);
    REQUIRE(id);
    GibsonScore s = best_map_potential(ms[*id], empty, ms);
    CHECK(s.am_size == 2);
    CHECK(s.min_level == 2);
    CHECK(s.freq_b == 1);
    CHECK(s.freq_t == 1);
    CHECK(s.rootedness == 2);
    CHECK(s.new_times_known == 0);
    CHECK(s.total == 8);
    CHECK(s == static_potential(ms[*id]));
}

TEST_CASE("dynamic term is new times known")
{
    // Select r(a, b) ~ r(x, y) (3 matches known), then score s(g(c), ...) which brings 3 new matches.
    auto r = oracle::parse_ok(
        "domain b { relation r/2; relation s/2; function g/1; facts: r(a, b); s(g(c), d); }\n"
        "domain t { relation r/2; relation s/2; function g/1; facts: r(x, y); s(g(z), w); }");
    MatchSet ms = generate_matches(r.domains[0], r.domains[1], RuleSet::sme_default());
    GibsonState state(ms);
    MatchId rr = *ms.find(r.domains[0].facts()[0], r.domains[1].facts()[0]);
    std::vector<std::vector<MatchId>> closures(ms.total());
    state.select(rr, match_closure(ms, rr), closures);
    CHECK(state.known().size() == 3);

    MatchId ss = *ms.find(r.domains[0].facts()[1], r.domains[1].facts()[1]);
    GibsonScore s = best_map_potential(ms[ss], state, ms);
    // s~s, g(c)~g(z), c~z, d~w are all new
    CHECK(s.new_times_known == 4 * 3);
    CHECK(s.total == static_potential(ms[ss]).total + 12);
    check_terms(ms, state);
}

TEST_CASE("potential terms agree with the structural oracle on the bundled corpus")
{
    auto corpus = oracle::load_classics();
    std::vector<std::pair<std::string, std::string>> pairs{
        {"water-flow", "heat-flow"}, {"solar-system", "atom"}, {"water-flow", "water-flow"}, {"atom", "atom"}};
    for (const auto& [bn, tn] : pairs) {
        for (RuleSet rules : {RuleSet::sme_default(), RuleSet::gibson_default()}) {
            MatchSet ms = generate_matches(*corpus.find(bn), *corpus.find(tn), rules);
            GibsonState state(ms);
            check_terms(ms, state);
            // after committing the best cycle-one match
            MatchId top = 0;
            std::int64_t best = -1;
            for (const auto& m : ms.matches()) {
                if (!m.valid)
                    continue;
                auto closure = match_closure(ms, m.id);
                if (!is_one_to_one(ms, closure))
                    continue;
                std::int64_t t = static_potential(m).total;
                if (t > best) {
                    best = t;
                    top = m.id;
                }
            }
            std::vector<std::vector<MatchId>> closures(ms.total());
            state.select(top, match_closure(ms, top), closures);
            check_terms(ms, state);
        }
    }
}

TEST_CASE("single-fact isomorphic domains")
{
    auto r = oracle::parse_ok("domain b { relation loves/2; facts: loves(jim, mary); }\n"
                              "domain t { relation loves/2; facts: loves(flo, bibi); }");
    for (RuleSet rules : {RuleSet::sme_default(), RuleSet::gibson_default()}) {
        MatchSet ms = generate_matches(r.domains[0], r.domains[1], rules);
        GibsonResult g = gibson_map(ms);
        REQUIRE(g.gmaps.size() == 1);
        CHECK(g.cycles_to_best <= 2);
        GMap oracle_best = optimal_merge(ms, build_pmaps(ms));
        CHECK(g.gmaps[0].members == oracle_best.members);
        CHECK(g.gmaps[0].score == 4);
    }
}

TEST_CASE("empty match space")
{
    auto r = oracle::parse_ok("domain b { relation p/1; facts: p(a); }\ndomain t { relation q/1; facts: q(b); }");
    MatchSet ms = generate_matches(r.domains[0], r.domains[1], RuleSet::sme_default());
    GibsonResult g = gibson_map(ms);
    CHECK(g.gmaps.empty());
    CHECK(g.cycles_to_best == 0);
    CHECK_THROWS_AS(gibson_map(ms, {0, false}), std::invalid_argument);
}

TEST_CASE("ties fork into alternative g-maps")
{
    auto r = oracle::parse_ok("domain b { attribute p/1; facts: p(a); }\n"
                              "domain t { attribute p/1; facts: p(x); p(y); }");
    MatchSet ms = generate_matches(r.domains[0], r.domains[1], RuleSet::sme_default());
    GibsonResult g = gibson_map(ms);
    REQUIRE(g.gmaps.size() == 2);
    CHECK(g.gmaps[0].score == g.gmaps[1].score);
    CHECK(g.forks_taken == 1);
    CHECK(g.gmaps[0].members < g.gmaps[1].members);

    // brute force: both single-fact interpretations are optimal
    auto pmaps = build_pmaps(ms);
    REQUIRE(pmaps.size() == 2);
    CHECK(pmaps[0].ses == g.gmaps[0].score);
    CHECK(pmaps[1].ses == g.gmaps[1].score);

    GibsonResult capped = gibson_map(ms, {1, false});
    CHECK(capped.gmaps.size() == 1);
    CHECK(capped.forks_taken == 0);
    CHECK(capped.gmaps[0].members == g.gmaps[0].members);
}

TEST_CASE("flow analogy under default GIBSON rules")
{
    auto corpus = oracle::load_classics();
    MatchSet ms = generate_matches(*corpus.find("water-flow"), *corpus.find("heat-flow"), RuleSet::gibson_default());
    GibsonResult g = gibson_map(ms);
    REQUIRE_FALSE(g.gmaps.empty());
    std::set<std::pair<std::string, std::string>> top;
    for (const auto& [b, t] : g.gmaps[0].correspondences)
        top.emplace(ms.base().render(b), ms.target().render(t));
    CHECK(top.count({"pressure(beaker)", "temperature(coffee)"}));
    CHECK(top.count({"beaker", "coffee"}));
    CHECK(top.count({"vial", "ice-cube"}));
    CHECK(top.count({"pipe", "bar"}));
    CHECK(top.count({"water", "heat"}));

    auto pmaps = build_pmaps(ms);
    GMap best = optimal_merge(ms, pmaps, 64);
    CHECK(g.gmaps[0].members == best.members);
    // clear(beaker) pairs equally well with liquid(coffee) or flat-top(coffee)
    CHECK(g.gmaps.size() == 2);
    CHECK(g.gmaps[1].score == g.gmaps[0].score);
    CHECK(g.cycles_to_best == 2);
    for (const auto& gm : g.gmaps)
        check_gmap(ms, gm);
}

TEST_CASE("atom analogy under default GIBSON rules")
{
    auto corpus = oracle::load_classics();
    MatchSet ms = generate_matches(*corpus.find("solar-system"), *corpus.find("atom"), RuleSet::gibson_default());
    GibsonResult g = gibson_map(ms);
    REQUIRE_FALSE(g.gmaps.empty());
    GMap best = optimal_merge(ms, build_pmaps(ms), 64);
    CHECK(g.gmaps[0].members == best.members);
    std::set<std::pair<std::string, std::string>> top;
    for (const auto& [b, t] : g.gmaps[0].correspondences)
        top.emplace(ms.base().render(b), ms.target().render(t));
    CHECK(top.count({"sun", "nucleus"}));
    CHECK(top.count({"planet", "electron"}));
    CHECK(top.count({"attracts(sun, planet)", "attracts(nucleus, electron)"}));
}

TEST_CASE("state invariants along every branch")
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        GeneratorSpec spec;
        spec.n_entities = 3 + static_cast<int>(seed % 5);
        spec.n_facts = 3 + static_cast<int>(seed % 6);
        spec.max_level = 1 + static_cast<int>(seed % 3);
        spec.predicate_pool = 2;
        spec.ambiguity = 0.6;
        spec.seed = seed;
        Domain b = generate_domain(spec, "b");
        spec.seed += 777;
        Domain t = generate_domain(spec, "t");
        CAPTURE(seed);
        MatchSet ms = generate_matches(b, t, RuleSet::gibson_default());

        // Walk one branch by hand, checking monotone growth and candidate hygiene.
        std::vector<std::vector<MatchId>> closures(ms.total());
        GibsonState state(ms);
        for (const auto& m : ms.matches())
            if (m.valid)
                closures[static_cast<std::size_t>(m.id)] = match_closure(ms, m.id);
        std::vector<MatchId> previous;
        for (int step = 0; step < 6; ++step) {
            MatchId pick = -1;
            for (const auto& m : ms.matches()) {
                if (!m.valid || state.is_known(m.id))
                    continue;
                const auto& c = closures[static_cast<std::size_t>(m.id)];
                if (is_one_to_one(ms, c) && !state.conflicts(c)) {
                    pick = m.id;
                    break;
                }
            }
            if (pick < 0)
                break;
            GibsonScore s = best_map_potential(ms[pick], state, ms);
            if (state.known().empty())
                CHECK(s.new_times_known == 0);
            else
                CHECK(s.new_times_known > 0);
            state.select(pick, closures[static_cast<std::size_t>(pick)], closures);
            std::vector<MatchId> now(state.known().begin(), state.known().end());
            for (MatchId p : previous)
                CHECK(state.is_known(p));
            previous = now;
            std::vector<MatchId> known(state.known().begin(), state.known().end());
            std::sort(known.begin(), known.end());
            CHECK(is_one_to_one(ms, known));
            CHECK(is_closed(ms, known));
        }

        GibsonResult g = gibson_map(ms);
        for (const auto& gm : g.gmaps)
            check_gmap(ms, gm);
        for (std::size_t i = 1; i < g.gmaps.size(); ++i)
            CHECK(g.gmaps[i - 1].score >= g.gmaps[i].score);
        CHECK(g.branches <= 8);

        GibsonResult again = gibson_map(ms);
        REQUIRE(again.gmaps.size() == g.gmaps.size());
        for (std::size_t i = 0; i < g.gmaps.size(); ++i)
            CHECK(again.gmaps[i].members == g.gmaps[i].members);
        CHECK(again.cycles_to_best == g.cycles_to_best);
    }
}

TEST_CASE("cycle-one scores do not depend on selection order")
{
    auto corpus = oracle::load_classics();
    MatchSet ms = generate_matches(*corpus.find("solar-system"), *corpus.find("atom"), RuleSet::gibson_default());
    GibsonState empty(ms);
    for (const auto& m : ms.matches())
        if (m.valid)
            CHECK(best_map_potential(m, empty, ms) == static_potential(m));
}

TEST_CASE("percent correct on self-maps")
{
    auto corpus = oracle::load_classics();
    const Domain& w = *corpus.find("water-flow");
    MatchSet ms = generate_matches(w, w, RuleSet::sme_default());
    GMap best = optimal_merge(ms, build_pmaps(ms));
    CHECK(percent_correct(ms, best) == 100.0);
    CHECK(percent_correct(ms, GMap{}) == 0.0);

    auto r = oracle::parse_ok("domain e { }");
    MatchSet empty = generate_matches(r.domains[0], r.domains[0], RuleSet::sme_default());
    CHECK(percent_correct(empty, GMap{}) == 100.0);
}
