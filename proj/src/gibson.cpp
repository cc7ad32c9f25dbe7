#include "analogy/gibson.hpp"

#include <algorithm>
#include <map>

namespace analogy {

GibsonState::GibsonState(const MatchSet& matches)
    : matches_(&matches), known_flag_(matches.total(), 0), forward_(matches.base().size(), -1),
      backward_(matches.target().size(), -1)
{
}

bool GibsonState::conflicts(std::span<const MatchId> closure) const
{
    for (MatchId id : closure) {
        const MatchHypothesis& m = (*matches_)[id];
        ElementId f = forward_[static_cast<std::size_t>(m.base)];
        ElementId b = backward_[static_cast<std::size_t>(m.target)];
        if ((f >= 0 && f != m.target) || (b >= 0 && b != m.base))
            return true;
    }
    return false;
}

std::size_t GibsonState::unknown_count(std::span<const MatchId> closure) const
{
    std::size_t n = 0;
    for (MatchId id : closure)
        if (!known_flag_[static_cast<std::size_t>(id)])
            ++n;
    return n;
}

void GibsonState::select(MatchId id, std::span<const MatchId> closure,
                         const std::vector<std::vector<MatchId>>& closures)
{
    for (MatchId c : closure) {
        if (known_flag_[static_cast<std::size_t>(c)])
            continue;
        known_flag_[static_cast<std::size_t>(c)] = 1;
        known_.push_back(c);
        const MatchHypothesis& m = (*matches_)[c];
        if (forward_[static_cast<std::size_t>(m.base)] < 0) {
            ++mapped_base_;
            if (m.kind == MatchKind::entity)
                ++mapped_base_entities_;
        }
        forward_[static_cast<std::size_t>(m.base)] = m.target;
        backward_[static_cast<std::size_t>(m.target)] = m.base;
    }
    selections.push_back(id);
    ++cycle;
    std::erase_if(candidates_, [&](MatchId c) {
        return known_flag_[static_cast<std::size_t>(c)] || conflicts(closures[static_cast<std::size_t>(c)]);
    });
}

GibsonScore static_potential(const MatchHypothesis& m)
{
    GibsonScore s;
    std::vector<MatchId> args = m.arg_matches;
    std::sort(args.begin(), args.end());
    s.am_size = static_cast<int>(std::unique(args.begin(), args.end()) - args.begin());
    s.min_level = m.min_level;
    s.freq_b = m.freq_b;
    s.freq_t = m.freq_t;
    s.rootedness = m.rootedness;
    s.total = s.am_size + s.min_level + s.freq_b + s.freq_t + s.rootedness;
    return s;
}

GibsonScore best_map_potential(const MatchHypothesis& m, const GibsonState& state, std::span<const MatchId> closure)
{
    GibsonScore s = static_potential(m);
    auto new_matches = static_cast<std::int64_t>(state.unknown_count(closure));
    auto known = static_cast<std::int64_t>(state.known().size());
    s.new_times_known = new_matches * known;
    s.total += s.new_times_known;
    return s;
}

GibsonScore best_map_potential(const MatchHypothesis& m, const GibsonState& state, const MatchSet& matches)
{
    return best_map_potential(m, state, match_closure(matches, m.id));
}

class GibsonEngine {
public:
    GibsonEngine(const MatchSet& matches, const GibsonOptions& options)
        : matches_(matches), options_(options), closures_(matches.total())
    {
        for (const MatchHypothesis& m : matches.matches()) {
            if (!m.valid)
                continue;
            closures_[static_cast<std::size_t>(m.id)] = match_closure(matches, m.id);
            if (is_one_to_one(matches, closures_[static_cast<std::size_t>(m.id)]))
                initial_candidates_.push_back(m.id);
        }
        for (const Element& e : matches.base().elements())
            (e.is_entity() ? base_entities_ : base_elements_)++;
        base_elements_ += base_entities_;
    }

    GibsonResult run()
    {
        GibsonResult result;
        if (initial_candidates_.empty())
            return result;

        GibsonState root(matches_);
        root.candidates_ = initial_candidates_;
        std::vector<GibsonState> stack;
        stack.push_back(std::move(root));
        result.branches = 1;

        struct Outcome {
            GMap gmap;
            int cycles;
        };
        std::vector<Outcome> outcomes;

        while (!stack.empty()) {
            GibsonState state = std::move(stack.back());
            stack.pop_back();
            while (!finished(state)) {
                std::vector<MatchId> tied = top_scorers(state);
                int room = options_.fork_cap - result.branches;
                int spawn = std::min(static_cast<int>(tied.size()) - 1, std::max(room, 0));
                // Push in reverse so branches pop in match-id order.
                for (int k = spawn; k >= 1; --k) {
                    GibsonState branch = state;
                    branch.fork_depth = state.fork_depth + 1;
                    MatchId pick = tied[static_cast<std::size_t>(k)];
                    branch.select(pick, closures_[static_cast<std::size_t>(pick)], closures_);
                    stack.push_back(std::move(branch));
                }
                result.branches += spawn;
                result.forks_taken += spawn;
                state.select(tied.front(), closures_[static_cast<std::size_t>(tied.front())], closures_);
            }
            std::vector<int> provenance(state.selections.begin(), state.selections.end());
            outcomes.push_back({make_gmap(matches_, std::vector<MatchId>(state.known_.begin(), state.known_.end()),
                                          std::move(provenance)),
                                state.cycle});
        }

        std::stable_sort(outcomes.begin(), outcomes.end(), [](const Outcome& a, const Outcome& b) {
            if (a.gmap.score != b.gmap.score)
                return a.gmap.score > b.gmap.score;
            if (a.gmap.members != b.gmap.members)
                return a.gmap.members < b.gmap.members;
            return a.cycles < b.cycles;
        });
        for (Outcome& o : outcomes) {
            if (!result.gmaps.empty() && result.gmaps.back().members == o.gmap.members)
                continue;
            if (result.gmaps.empty())
                result.cycles_to_best = o.cycles;
            result.gmaps.push_back(std::move(o.gmap));
        }
        return result;
    }

private:
    bool finished(const GibsonState& state) const
    {
        if (state.candidates_.empty())
            return true;
        if (options_.entities_only_termination)
            return state.mapped_base_entities() == base_entities_;
        return state.mapped_base_count() == base_elements_;
    }

    std::vector<MatchId> top_scorers(const GibsonState& state) const
    {
        std::vector<MatchId> tied;
        std::int64_t best = -1;
        for (MatchId c : state.candidates_) {
            std::int64_t total =
                best_map_potential(matches_[c], state, closures_[static_cast<std::size_t>(c)]).total;
            if (total > best) {
                best = total;
                tied.clear();
            }
            if (total == best)
                tied.push_back(c);
        }
        return tied;
    }

    const MatchSet& matches_;
    GibsonOptions options_;
    std::vector<std::vector<MatchId>> closures_;
    std::vector<MatchId> initial_candidates_;
    std::size_t base_entities_ = 0;
    std::size_t base_elements_ = 0;
};

GibsonResult gibson_map(const MatchSet& matches, const GibsonOptions& options)
{
    if (options.fork_cap < 1)
        throw std::invalid_argument("fork_cap must be at least 1");
    return GibsonEngine(matches, options).run();
}

double percent_correct(const MatchSet& self_matches, const GMap& gmap)
{
    const Domain& d = self_matches.base();
    std::size_t identity = 0;
    for (const Element& e : d.elements())
        if (e.freq > 0)
            ++identity;
    if (identity == 0)
        return 100.0;
    std::size_t hits = 0;
    for (const auto& [b, t] : gmap.correspondences)
        if (b == t && d.element(b).freq > 0)
            ++hits;
    return 100.0 * static_cast<double>(hits) / static_cast<double>(identity);
}

}  // namespace analogy
