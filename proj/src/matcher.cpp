#include "analogy/matcher.hpp"

#include "analogy/generator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace analogy {

std::string_view to_string(PredicateRule rule)
{
    return rule == PredicateRule::identical ? "identical" : "free-for-all";
}

std::string_view to_string(EntityMode mode)
{
    return mode == EntityMode::sanctioned_only ? "sanctioned-only" : "all-pairs";
}

namespace {

std::uint64_t pair_key(ElementId b, ElementId t)
{
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(b)) << 32) | static_cast<std::uint32_t>(t);
}

class MatchBuilder {
public:
    MatchBuilder(const Domain& base, const Domain& target, const RuleSet& rules)
        : base_(base), target_(target), rules_(rules)
    {
    }

    std::vector<MatchHypothesis> run()
    {
        seed_expression_pairs();
        induce_argument_pairs();
        if (rules_.entity_mode == EntityMode::all_pairs)
            for (ElementId b : base_.entities())
                for (ElementId t : target_.entities())
                    pairs_.emplace(std::make_pair(b, t), true);
        return number();
    }

private:
    bool name_ok(const Element& b, const Element& t, bool as_arg) const
    {
        const PredicateDecl& pb = base_.predicate_of(b.id);
        const PredicateDecl& pt = target_.predicate_of(t.id);
        if (pb.kind != pt.kind || pb.arity != pt.arity)
            return false;
        if (rules_.predicate_rule == PredicateRule::free_for_all)
            return true;
        if (pb.name == pt.name)
            return true;
        return as_arg && rules_.sanction_functions && pb.kind == PredicateKind::function;
    }

    // Argument-wise matchability, ignoring the naming rule at the top level.
    bool structurally_matchable(ElementId bid, ElementId tid)
    {
        const Element& b = base_.element(bid);
        const Element& t = target_.element(tid);
        if (b.is_entity() || t.is_entity())
            return b.is_entity() && t.is_entity();
        auto key = pair_key(bid, tid);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        bool ok = b.args.size() == t.args.size();
        for (std::size_t i = 0; ok && i < b.args.size(); ++i) {
            const Element& ba = base_.element(b.args[i]);
            const Element& ta = target_.element(t.args[i]);
            if (ba.is_entity() || ta.is_entity())
                ok = ba.is_entity() && ta.is_entity();
            else
                ok = name_ok(ba, ta, true) && structurally_matchable(ba.id, ta.id);
        }
        memo_.emplace(key, ok);
        return ok;
    }

    void seed_expression_pairs()
    {
        std::map<std::pair<PredicateKind, int>, std::vector<ElementId>> by_class;
        std::map<std::string, std::vector<ElementId>, std::less<>> by_name;
        for (const Element& t : target_.elements()) {
            if (t.is_entity())
                continue;
            const PredicateDecl& d = target_.predicate_of(t.id);
            by_class[{d.kind, d.arity}].push_back(t.id);
            by_name[d.name].push_back(t.id);
        }
        for (const Element& b : base_.elements()) {
            if (b.is_entity())
                continue;
            const PredicateDecl& d = base_.predicate_of(b.id);
            const std::vector<ElementId>* candidates = nullptr;
            if (rules_.predicate_rule == PredicateRule::free_for_all) {
                auto it = by_class.find({d.kind, d.arity});
                candidates = it == by_class.end() ? nullptr : &it->second;
            } else {
                auto it = by_name.find(d.name);
                candidates = it == by_name.end() ? nullptr : &it->second;
            }
            if (!candidates)
                continue;
            for (ElementId tid : *candidates) {
                if (!name_ok(b, target_.element(tid), false))
                    continue;
                pairs_.emplace(std::make_pair(b.id, tid), structurally_matchable(b.id, tid));
            }
        }
    }

    void induce_argument_pairs()
    {
        std::vector<std::pair<ElementId, ElementId>> work;
        for (const auto& [pair, valid] : pairs_)
            if (valid)
                work.push_back(pair);
        while (!work.empty()) {
            auto [bid, tid] = work.back();
            work.pop_back();
            const Element& b = base_.element(bid);
            const Element& t = target_.element(tid);
            for (std::size_t i = 0; i < b.args.size(); ++i) {
                auto [it, inserted] = pairs_.emplace(std::make_pair(b.args[i], t.args[i]), true);
                if (inserted && !base_.element(b.args[i]).is_entity())
                    work.push_back(it->first);
            }
        }
    }

    std::vector<MatchHypothesis> number()
    {
        std::vector<MatchHypothesis> out;
        out.reserve(pairs_.size());
        std::map<std::pair<ElementId, ElementId>, MatchId> ids;
        for (const auto& [pair, valid] : pairs_) {
            MatchHypothesis m;
            m.id = static_cast<MatchId>(out.size());
            m.base = pair.first;
            m.target = pair.second;
            m.valid = valid;
            const Element& b = base_.element(m.base);
            const Element& t = target_.element(m.target);
            m.kind = b.is_entity() ? MatchKind::entity : MatchKind::expression;
            m.base_level = b.level;
            m.min_level = std::min(b.level, t.level);
            m.freq_b = b.freq;
            m.freq_t = t.freq;
            m.rootedness = (b.is_root ? 1 : 0) + (t.is_root ? 1 : 0);
            ids.emplace(pair, m.id);
            out.push_back(std::move(m));
        }
        for (MatchHypothesis& m : out) {
            if (m.kind != MatchKind::expression || !m.valid)
                continue;
            const Element& b = base_.element(m.base);
            const Element& t = target_.element(m.target);
            for (std::size_t i = 0; i < b.args.size(); ++i)
                m.arg_matches.push_back(ids.at({b.args[i], t.args[i]}));
        }
        return out;
    }

    const Domain& base_;
    const Domain& target_;
    RuleSet rules_;
    std::unordered_map<std::uint64_t, bool> memo_;
    std::map<std::pair<ElementId, ElementId>, bool> pairs_;  // ordered: ids follow (base, target)
};

}  // namespace

MatchSet::MatchSet(const Domain& base, const Domain& target, RuleSet rules, std::vector<MatchHypothesis> matches)
    : base_(&base), target_(&target), rules_(rules), matches_(std::move(matches)),
      by_base_(base.size()), by_target_(target.size())
{
    pair_index_.reserve(matches_.size());
    for (const MatchHypothesis& m : matches_) {
        by_base_[static_cast<std::size_t>(m.base)].push_back(m.id);
        by_target_[static_cast<std::size_t>(m.target)].push_back(m.id);
        pair_index_.emplace(pair_key(m.base, m.target), m.id);
    }
}

std::size_t MatchSet::valid_count() const
{
    return static_cast<std::size_t>(
        std::count_if(matches_.begin(), matches_.end(), [](const MatchHypothesis& m) { return m.valid; }));
}

std::optional<MatchId> MatchSet::find(ElementId base, ElementId target) const
{
    auto it = pair_index_.find(pair_key(base, target));
    if (it == pair_index_.end())
        return std::nullopt;
    return it->second;
}

MatchSet generate_matches(const Domain& base, const Domain& target, const RuleSet& rules)
{
    MatchBuilder builder(base, target, rules);
    return MatchSet(base, target, rules, builder.run());
}

std::vector<MatchId> match_closure(const MatchSet& matches, MatchId id)
{
    std::vector<MatchId> out;
    std::vector<MatchId> stack{id};
    std::set<MatchId> seen;
    while (!stack.empty()) {
        MatchId cur = stack.back();
        stack.pop_back();
        if (!seen.insert(cur).second)
            continue;
        out.push_back(cur);
        for (MatchId a : matches[cur].arg_matches)
            stack.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MatchCountSample> match_count_profile(int n_entities, const RuleSet& rules, std::uint64_t seed,
                                                  int max_entities)
{
    if (n_entities < 1)
        throw std::invalid_argument("match_count_profile needs at least one entity");
    std::vector<MatchCountSample> samples;
    for (int n = n_entities; n <= max_entities; n *= 2) {
        GeneratorSpec spec;
        spec.n_entities = n;
        spec.n_facts = n;
        spec.max_level = 2;
        spec.predicate_pool = 4;
        spec.ambiguity = 0.5;
        spec.seed = seed * 1000003u + static_cast<std::uint64_t>(n);
        Domain base = generate_domain(spec, "base");
        spec.seed += 1;
        Domain target = generate_domain(spec, "target");
        MatchSet ms = generate_matches(base, target, rules);
        MatchCountSample s;
        s.n_entities = n;
        s.total_matches = ms.total();
        s.entity_matches = static_cast<std::size_t>(std::count_if(
            ms.matches().begin(), ms.matches().end(), [](const auto& m) { return m.kind == MatchKind::entity; }));
        samples.push_back(s);
    }
    return samples;
}

double growth_exponent(std::span<const MatchCountSample> samples)
{
    if (samples.size() < 2)
        throw std::invalid_argument("growth_exponent needs at least two samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(samples.size());
    for (const auto& s : samples) {
        double x = std::log(static_cast<double>(s.n_entities));
        double y = std::log(static_cast<double>(std::max<std::size_t>(s.total_matches, 1)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace analogy
