#include "analogy/domain.hpp"
#include "analogy/generator.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace analogy;

namespace {

ElementId find_term(const Domain& d, const std::string& text)
{
    for (const Element& e : d.elements())
        if (d.render(e.id) == text)
            return e.id;
    throw std::runtime_error("no term " + text);
}

}  // namespace

TEST_CASE("levels on the water-flow encoding")
{
    auto corpus = oracle::load_classics();
    const Domain& w = *corpus.find("water-flow");

    CHECK(level_of(w, find_term(w, "water")) == 0);
    CHECK(level_of(w, find_term(w, "pressure(beaker)")) == 1);
    CHECK(level_of(w, find_term(w, "greater(pressure(beaker), pressure(vial))")) == 2);
    CHECK(level_of(w, find_term(w, "cause(greater(pressure(beaker), pressure(vial)), flow(beaker, vial, water, pipe))")) ==
          3);
    CHECK_THROWS_AS(level_of(w, 999), UnknownElement);
    CHECK_THROWS_AS(level_of(w, -1), UnknownElement);
}

TEST_CASE("frequencies count containing facts")
{
    auto corpus = oracle::load_classics();
    const Domain& w = *corpus.find("water-flow");

    // cause(...), greater(diameter(beaker), ...), clear(beaker)
    CHECK(freq_of(w, find_term(w, "beaker")) == 3);
    // only the cause fact mentions pipe
    CHECK(freq_of(w, find_term(w, "pipe")) == 1);
    CHECK(freq_of(w, find_term(w, "clear(beaker)")) == 1);
    CHECK(freq_of(w, find_term(w, "flow(beaker, vial, water, pipe)")) == 1);
    CHECK_THROWS_AS(freq_of(w, 1000), UnknownElement);

    // attracts(sun, planet) is shared by both cause facts after dedup
    const Domain& s = *corpus.find("solar-system");
    CHECK(freq_of(s, find_term(s, "attracts(sun, planet)")) == 2);
    CHECK(freq_of(s, find_term(s, "sun")) == 5);
}

TEST_CASE("roots")
{
    auto corpus = oracle::load_classics();
    const Domain& w = *corpus.find("water-flow");
    std::vector<std::string> rendered;
    for (ElementId r : roots_of(w))
        rendered.push_back(w.render(r));
    CHECK(rendered == std::vector<std::string>{
                          "cause(greater(pressure(beaker), pressure(vial)), flow(beaker, vial, water, pipe))",
                          "greater(diameter(beaker), diameter(vial))", "clear(beaker)", "liquid(water)",
                          "flat-top(water)"});
    CHECK_FALSE(w.element(find_term(w, "flow(beaker, vial, water, pipe)")).is_root);

    DomainBuilder empty("e");
    Domain d = std::move(empty).build();
    CHECK(roots_of(d).empty());

    DomainBuilder one("one");
    one.declare({"loves", PredicateKind::relation, 2});
    ElementId a = one.entity("a");
    ElementId b = one.entity("b");
    ElementId f = one.expression("loves", {a, b});
    one.fact(f);
    Domain od = std::move(one).build();
    CHECK(roots_of(od) == std::vector<ElementId>{f});
    CHECK(freq_of(od, f) == 1);
}

TEST_CASE("a listed fact nested in another fact is not a root")
{
    auto r = oracle::parse_ok(R"(domain d {
      entities: a, b;
      relation p/2; relation q/2;
      facts: p(a, b); q(p(a, b), a);
    })");
    const Domain& d = r.domains.front();
    REQUIRE(d.facts().size() == 2);
    CHECK_FALSE(d.element(d.facts()[0]).is_root);
    CHECK(d.element(d.facts()[1]).is_root);
    CHECK(freq_of(d, d.facts()[0]) == 2);
    CHECK(roots_of(d) == std::vector<ElementId>{d.facts()[1]});
}

TEST_CASE("structural dedup shares identical expressions")
{
    DomainBuilder b("d");
    b.declare({"f", PredicateKind::function, 1});
    b.declare({"r", PredicateKind::relation, 2});
    ElementId x = b.entity("x");
    ElementId f1 = b.expression("f", {x});
    ElementId f2 = b.expression("f", {x});
    CHECK(f1 == f2);
    ElementId r = b.expression("r", {f1, f2});
    b.fact(r);
    b.fact(r);
    Domain d = std::move(b).build();
    CHECK(d.size() == 3);
    CHECK(d.facts().size() == 1);
}

TEST_CASE("builder rejects malformed expressions")
{
    DomainBuilder b("d");
    b.declare({"hot", PredicateKind::attribute, 1});
    b.declare({"f", PredicateKind::function, 1});
    b.declare({"r", PredicateKind::relation, 2});
    ElementId x = b.entity("x");
    ElementId rx = b.expression("r", {x, x});
    CHECK_THROWS_AS(b.declare({"g", PredicateKind::attribute, 2}), std::invalid_argument);
    CHECK_THROWS_AS(b.declare({"r", PredicateKind::relation, 2}), std::invalid_argument);
    CHECK_THROWS_AS(b.expression("hot", {rx}), std::invalid_argument);
    CHECK_THROWS_AS(b.expression("f", {rx}), std::invalid_argument);
    CHECK_THROWS_AS(b.expression("r", {x}), std::invalid_argument);
    CHECK_THROWS_AS(b.expression("nope", {x}), std::invalid_argument);
    CHECK_THROWS_AS(b.entity("r"), std::invalid_argument);
    CHECK_THROWS_AS(b.fact(x), std::invalid_argument);
}

TEST_CASE("domain properties hold on generated domains")
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        GeneratorSpec spec;
        spec.n_entities = 3 + static_cast<int>(seed % 7);
        spec.n_facts = 2 + static_cast<int>(seed % 11);
        spec.max_level = 1 + static_cast<int>(seed % 4);
        spec.ambiguity = static_cast<double>(seed % 5) / 4.0;
        spec.seed = seed;
        Domain d = generate_domain(spec);
        CAPTURE(seed);
        for (const Element& e : d.elements()) {
            CHECK(e.level == oracle::level(d, e.id));
            CHECK(e.freq == oracle::freq(d, e.id));
            CHECK(e.is_root == oracle::is_root(d, e.id));
            CHECK(e.freq <= static_cast<int>(d.facts().size()));
            for (ElementId a : e.args) {
                CHECK(a < e.id);
                CHECK(d.element(a).level < e.level);
            }
        }
    }
}
