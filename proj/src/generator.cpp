#include "analogy/generator.hpp"

#include <map>
#include <random>

namespace analogy {

namespace {

class DomainGenerator {
public:
    DomainGenerator(const GeneratorSpec& spec, std::string name)
        : spec_(spec), rng_(spec.seed), builder_(std::move(name))
    {
    }

    Domain run() &&
    {
        for (int i = 0; i < spec_.n_entities; ++i)
            entities_.push_back(builder_.entity("e" + std::to_string(i)));
        for (int i = 0; i < spec_.n_facts; ++i) {
            int level = i == 0 ? spec_.max_level : uniform(1, spec_.max_level);
            builder_.fact(expression(level, false));
        }
        return std::move(builder_).build();
    }

private:
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }

    ElementId pick_entity()
    {
        if (next_unused_ < entities_.size())
            return entities_[next_unused_++];
        return entities_[static_cast<std::size_t>(uniform(0, spec_.n_entities - 1))];
    }

    std::string predicate(PredicateKind kind, int arity)
    {
        std::string prefix = kind == PredicateKind::attribute ? "attr" : kind == PredicateKind::function ? "fn" : "rel";
        std::string name;
        if (chance(spec_.ambiguity))
            name = prefix + std::to_string(arity) + "-shared" + std::to_string(uniform(0, spec_.predicate_pool - 1));
        else
            name = prefix + std::to_string(arity) + "-" + std::to_string(fresh_++);
        if (!declared_.contains(name)) {
            builder_.declare({name, kind, arity});
            declared_.emplace(name, kind);
        }
        return name;
    }

    // Builds an expression of exactly `level`.
    ElementId expression(int level, bool nested)
    {
        if (level == 1) {
            int shape = uniform(0, nested ? 2 : 1);
            if (shape > 0) {
                auto kind = shape == 2 ? PredicateKind::function : PredicateKind::attribute;
                std::string name = predicate(kind, 1);
                return builder_.expression(name, {pick_entity()});
            }
            std::string name = predicate(PredicateKind::relation, 2);
            ElementId a = pick_entity();
            ElementId b = pick_entity();
            return builder_.expression(name, {a, b});
        }
        std::string name = predicate(PredicateKind::relation, 2);
        ElementId first = expression(level - 1, true);
        ElementId second = chance(0.5) ? pick_entity() : expression(uniform(1, level - 1), true);
        return builder_.expression(name, {first, second});
    }

    GeneratorSpec spec_;
    std::mt19937_64 rng_;
    DomainBuilder builder_;
    std::vector<ElementId> entities_;
    std::size_t next_unused_ = 0;
    int fresh_ = 0;
    std::map<std::string, PredicateKind> declared_;
};

}  // namespace

Domain generate_domain(const GeneratorSpec& spec, std::string name)
{
    if (spec.n_entities < 1 || spec.n_facts < 1 || spec.predicate_pool < 1)
        throw InfeasibleSpec("generator counts must be positive");
    if (spec.max_level < 1 || spec.max_level > kMaxGeneratedLevel)
        throw InfeasibleSpec("max_level must lie in [1, " + std::to_string(kMaxGeneratedLevel) + "]");
    if (!(spec.ambiguity >= 0.0 && spec.ambiguity <= 1.0))
        throw InfeasibleSpec("ambiguity must lie in [0, 1]");
    return DomainGenerator(spec, std::move(name)).run();
}

}  // namespace analogy
