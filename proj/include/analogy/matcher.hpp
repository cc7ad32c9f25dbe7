#pragma once

#include "analogy/domain.hpp"

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace analogy {

using MatchId = std::int32_t;

enum class PredicateRule { identical, free_for_all };
enum class EntityMode { sanctioned_only, all_pairs };

std::string_view to_string(PredicateRule rule);
std::string_view to_string(EntityMode mode);

struct RuleSet {
    PredicateRule predicate_rule = PredicateRule::identical;
    EntityMode entity_mode = EntityMode::sanctioned_only;
    /// Under identical rules, let differently named functions match when the
    /// pair is forced as the argument of a matched expression
    /// (pressure(beaker) ~ temperature(coffee) under greater ~ greater).
    bool sanction_functions = true;

    static RuleSet sme_default() { return {}; }
    static RuleSet gibson_default() { return {PredicateRule::free_for_all, EntityMode::all_pairs, true}; }

    friend bool operator==(const RuleSet&, const RuleSet&) = default;
};

enum class MatchKind { entity, expression };

struct MatchHypothesis {
    MatchId id = 0;
    ElementId base = 0;
    ElementId target = 0;
    MatchKind kind = MatchKind::entity;
    /// Positional argument matches; empty for entity matches and for
    /// invalid expression matches.
    std::vector<MatchId> arg_matches;
    bool valid = true;
    int base_level = 0;
    int min_level = 0;
    int freq_b = 0;
    int freq_t = 0;
    int rootedness = 0;
};

/// The match-hypothesis space for one base/target pair. Holds non-owning
/// pointers to both domains, which must outlive it.
class MatchSet {
public:
    MatchSet() = default;
    MatchSet(const Domain& base, const Domain& target, RuleSet rules, std::vector<MatchHypothesis> matches);

    const Domain& base() const { return *base_; }
    const Domain& target() const { return *target_; }
    const RuleSet& rules() const { return rules_; }

    std::span<const MatchHypothesis> matches() const { return matches_; }
    const MatchHypothesis& operator[](MatchId id) const { return matches_[static_cast<std::size_t>(id)]; }
    std::size_t total() const { return matches_.size(); }
    std::size_t valid_count() const;

    std::span<const MatchId> by_base(ElementId id) const { return by_base_[static_cast<std::size_t>(id)]; }
    std::span<const MatchId> by_target(ElementId id) const { return by_target_[static_cast<std::size_t>(id)]; }
    std::optional<MatchId> find(ElementId base, ElementId target) const;

    /// Match weight used by SES and g-map scores: 1 + level of the base element.
    std::int64_t weight(MatchId id) const { return 1 + (*this)[id].base_level; }

private:
    const Domain* base_ = nullptr;
    const Domain* target_ = nullptr;
    RuleSet rules_;
    std::vector<MatchHypothesis> matches_;
    std::vector<std::vector<MatchId>> by_base_;
    std::vector<std::vector<MatchId>> by_target_;
    std::unordered_map<std::uint64_t, MatchId> pair_index_;
};

MatchSet generate_matches(const Domain& base, const Domain& target, const RuleSet& rules);

/// Downward closure of a match over arg_matches, sorted ascending.
std::vector<MatchId> match_closure(const MatchSet& matches, MatchId id);

struct MatchCountSample {
    int n_entities = 0;
    std::size_t total_matches = 0;
    std::size_t entity_matches = 0;
};

/// Match-space sizes for generated domain pairs at n, 2n, 4n, ... entities
/// up to `max_entities`, one fact per entity.
std::vector<MatchCountSample> match_count_profile(int n_entities, const RuleSet& rules, std::uint64_t seed,
                                                  int max_entities = 64);

/// Least-squares slope of log(total_matches) against log(n_entities).
double growth_exponent(std::span<const MatchCountSample> samples);

}  // namespace analogy
