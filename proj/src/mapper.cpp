#include "analogy/mapper.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace analogy {

std::int64_t score_of(const MatchSet& matches, std::span<const MatchId> members)
{
    std::int64_t total = 0;
    for (MatchId m : members)
        total += matches.weight(m);
    return total;
}

std::int64_t ses(const MatchSet& matches, const PMap& pmap)
{
    return score_of(matches, pmap.members);
}

bool is_one_to_one(const MatchSet& matches, std::span<const MatchId> members)
{
    std::unordered_map<ElementId, ElementId> forward;
    std::unordered_map<ElementId, ElementId> backward;
    for (MatchId id : members) {
        const MatchHypothesis& m = matches[id];
        auto [f, fnew] = forward.emplace(m.base, m.target);
        if (!fnew && f->second != m.target)
            return false;
        auto [b, bnew] = backward.emplace(m.target, m.base);
        if (!bnew && b->second != m.base)
            return false;
    }
    return true;
}

bool is_closed(const MatchSet& matches, std::span<const MatchId> members)
{
    std::vector<char> in(matches.total(), 0);
    for (MatchId id : members)
        in[static_cast<std::size_t>(id)] = 1;
    for (MatchId id : members)
        for (MatchId a : matches[id].arg_matches)
            if (!in[static_cast<std::size_t>(a)])
                return false;
    return true;
}

GMap make_gmap(const MatchSet& matches, std::vector<MatchId> members, std::vector<int> provenance)
{
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    GMap g;
    g.score = score_of(matches, members);
    for (MatchId id : members)
        g.correspondences.emplace_back(matches[id].base, matches[id].target);
    std::sort(g.correspondences.begin(), g.correspondences.end());
    g.members = std::move(members);
    g.provenance = std::move(provenance);
    return g;
}

std::vector<PMap> build_pmaps(const MatchSet& matches)
{
    std::vector<char> has_valid_parent(matches.total(), 0);
    for (const MatchHypothesis& m : matches.matches())
        if (m.valid)
            for (MatchId a : m.arg_matches)
                has_valid_parent[static_cast<std::size_t>(a)] = 1;

    std::vector<PMap> out;
    for (const MatchHypothesis& m : matches.matches()) {
        if (!m.valid || m.kind != MatchKind::expression || has_valid_parent[static_cast<std::size_t>(m.id)])
            continue;
        PMap p;
        p.root_match = m.id;
        p.members = match_closure(matches, m.id);
        for (MatchId id : p.members)
            if (matches[id].kind == MatchKind::entity)
                p.entity_correspondences.emplace_back(matches[id].base, matches[id].target);
        p.ses = ses(matches, p);
        p.internally_consistent = is_one_to_one(matches, p.members);
        out.push_back(std::move(p));
    }
    std::stable_sort(out.begin(), out.end(), [](const PMap& a, const PMap& b) {
        if (a.ses != b.ses)
            return a.ses > b.ses;
        return a.root_match < b.root_match;
    });
    return out;
}

std::size_t consistent_count(std::span<const PMap> pmaps)
{
    return static_cast<std::size_t>(
        std::count_if(pmaps.begin(), pmaps.end(), [](const PMap& p) { return p.internally_consistent; }));
}

namespace {

// Element-level one-to-one bookkeeping for a growing union of matches.
class UnionState {
public:
    explicit UnionState(const MatchSet& matches)
        : matches_(matches), forward_(matches.base().size(), -1), backward_(matches.target().size(), -1),
          in_(matches.total(), 0)
    {
    }

    bool compatible(std::span<const MatchId> members) const
    {
        for (MatchId id : members) {
            const MatchHypothesis& m = matches_[id];
            ElementId f = forward_[static_cast<std::size_t>(m.base)];
            ElementId b = backward_[static_cast<std::size_t>(m.target)];
            if ((f >= 0 && f != m.target) || (b >= 0 && b != m.base))
                return false;
        }
        return true;
    }

    void add(std::span<const MatchId> members)
    {
        for (MatchId id : members) {
            if (in_[static_cast<std::size_t>(id)])
                continue;
            in_[static_cast<std::size_t>(id)] = 1;
            const MatchHypothesis& m = matches_[id];
            forward_[static_cast<std::size_t>(m.base)] = m.target;
            backward_[static_cast<std::size_t>(m.target)] = m.base;
            members_.push_back(id);
        }
    }

    bool contains_all(std::span<const MatchId> members) const
    {
        return std::all_of(members.begin(), members.end(),
                           [&](MatchId id) { return in_[static_cast<std::size_t>(id)] != 0; });
    }

    const std::vector<MatchId>& members() const { return members_; }

private:
    const MatchSet& matches_;
    std::vector<ElementId> forward_;
    std::vector<ElementId> backward_;
    std::vector<char> in_;
    std::vector<MatchId> members_;
};

}  // namespace

std::vector<GMap> greedy_merge(const MatchSet& matches, std::span<const PMap> pmaps)
{
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < pmaps.size(); ++i)
        if (pmaps[i].internally_consistent)
            order.push_back(i);

    std::vector<GMap> out;
    std::vector<char> covered(pmaps.size(), 0);
    for (std::size_t seed : order) {
        if (covered[seed])
            continue;
        UnionState u(matches);
        u.add(pmaps[seed].members);
        std::vector<int> provenance{static_cast<int>(seed)};
        for (std::size_t i : order) {
            if (i == seed || !u.compatible(pmaps[i].members))
                continue;
            u.add(pmaps[i].members);
            provenance.push_back(static_cast<int>(i));
        }
        for (std::size_t i : order)
            if (u.contains_all(pmaps[i].members))
                covered[i] = 1;
        out.push_back(make_gmap(matches, u.members(), std::move(provenance)));
    }
    return out;
}

MergeBudgetExceeded::MergeBudgetExceeded(std::size_t consistent, std::size_t cap_)
    : std::runtime_error("optimal merge over " + std::to_string(consistent) +
                         " consistent p-maps exceeds the cap of " + std::to_string(cap_)),
      consistent_pmaps(consistent), cap(cap_)
{
}

namespace {

class ExhaustiveMerge {
public:
    ExhaustiveMerge(const MatchSet& matches, std::span<const PMap> pmaps, std::vector<std::size_t> order)
        : matches_(matches), pmaps_(pmaps), order_(std::move(order)), count_(matches.total(), 0),
          forward_(matches.base().size(), -1), backward_(matches.target().size(), -1)
    {
        suffix_.assign(order_.size() + 1, 0);
        for (std::size_t i = order_.size(); i-- > 0;)
            suffix_[i] = suffix_[i + 1] + pmaps_[order_[i]].ses;
    }

    GMap run()
    {
        search(0);
        std::vector<int> provenance(best_chosen_.begin(), best_chosen_.end());
        return make_gmap(matches_, best_members_, std::move(provenance));
    }

private:
    bool compatible(const PMap& p) const
    {
        for (MatchId id : p.members) {
            const MatchHypothesis& m = matches_[id];
            ElementId f = forward_[static_cast<std::size_t>(m.base)];
            ElementId b = backward_[static_cast<std::size_t>(m.target)];
            if ((f >= 0 && f != m.target) || (b >= 0 && b != m.base))
                return false;
        }
        return true;
    }

    bool adds_nothing(const PMap& p) const
    {
        return std::all_of(p.members.begin(), p.members.end(),
                           [&](MatchId id) { return count_[static_cast<std::size_t>(id)] > 0; });
    }

    void push(const PMap& p)
    {
        for (MatchId id : p.members) {
            if (count_[static_cast<std::size_t>(id)]++ == 0) {
                const MatchHypothesis& m = matches_[id];
                forward_[static_cast<std::size_t>(m.base)] = m.target;
                backward_[static_cast<std::size_t>(m.target)] = m.base;
                score_ += matches_.weight(id);
            }
        }
    }

    void pop(const PMap& p)
    {
        for (MatchId id : p.members) {
            if (--count_[static_cast<std::size_t>(id)] == 0) {
                const MatchHypothesis& m = matches_[id];
                forward_[static_cast<std::size_t>(m.base)] = -1;
                backward_[static_cast<std::size_t>(m.target)] = -1;
                score_ -= matches_.weight(id);
            }
        }
    }

    void record()
    {
        if (have_best_ && score_ < best_score_)
            return;
        std::vector<MatchId> members;
        for (std::size_t i : chosen_)
            members.insert(members.end(), pmaps_[i].members.begin(), pmaps_[i].members.end());
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        if (have_best_ && score_ == best_score_ && !(members < best_members_))
            return;
        have_best_ = true;
        best_score_ = score_;
        best_members_ = std::move(members);
        best_chosen_ = chosen_;
    }

    void search(std::size_t i)
    {
        if (have_best_ && score_ + suffix_[i] < best_score_)
            return;
        if (i == order_.size()) {
            record();
            return;
        }
        const PMap& p = pmaps_[order_[i]];
        if (compatible(p)) {
            bool redundant = adds_nothing(p);
            push(p);
            chosen_.push_back(order_[i]);
            search(i + 1);
            chosen_.pop_back();
            pop(p);
            // Excluding a p-map already inside the union cannot change it.
            if (redundant)
                return;
        }
        search(i + 1);
    }

    const MatchSet& matches_;
    std::span<const PMap> pmaps_;
    std::vector<std::size_t> order_;
    std::vector<std::int64_t> suffix_;
    std::vector<int> count_;
    std::vector<ElementId> forward_;
    std::vector<ElementId> backward_;
    std::vector<std::size_t> chosen_;
    std::int64_t score_ = 0;

    bool have_best_ = false;
    std::int64_t best_score_ = 0;
    std::vector<MatchId> best_members_;
    std::vector<std::size_t> best_chosen_;
};

}  // namespace

GMap optimal_merge(const MatchSet& matches, std::span<const PMap> pmaps, std::size_t cap)
{
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < pmaps.size(); ++i)
        if (pmaps[i].internally_consistent)
            order.push_back(i);
    if (order.size() > cap)
        throw MergeBudgetExceeded(order.size(), cap);
    if (order.empty())
        return {};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pmaps[a].ses > pmaps[b].ses; });
    return ExhaustiveMerge(matches, pmaps, std::move(order)).run();
}

}  // namespace analogy
