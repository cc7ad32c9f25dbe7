#pragma once

#include "analogy/mapper.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace analogy {

/// The per-match terms of BestMapPotential.
struct GibsonScore {
    int am_size = 0;           // distinct argument matches
    int min_level = 0;         // min(level(b), level(t))
    int freq_b = 0;
    int freq_t = 0;
    int rootedness = 0;        // roots among {b, t}
    std::int64_t new_times_known = 0;  // |new matches| * |known matches|
    std::int64_t total = 0;

    friend bool operator==(const GibsonScore&, const GibsonScore&) = default;
};

/// The g-map under construction on one branch, plus the live candidates.
class GibsonState {
public:
    explicit GibsonState(const MatchSet& matches);

    std::span<const MatchId> known() const { return known_; }
    bool is_known(MatchId id) const { return known_flag_[static_cast<std::size_t>(id)] != 0; }
    std::span<const MatchId> candidates() const { return candidates_; }

    /// True when some member of `closure` pairs an element already mapped
    /// elsewhere.
    bool conflicts(std::span<const MatchId> closure) const;
    std::size_t unknown_count(std::span<const MatchId> closure) const;

    /// Adds the closure to `known` and drops candidates that became known or
    /// conflicting.
    void select(MatchId id, std::span<const MatchId> closure, const std::vector<std::vector<MatchId>>& closures);

    std::size_t mapped_base_count() const { return mapped_base_; }
    std::size_t mapped_base_entities() const { return mapped_base_entities_; }
    bool base_mapped(ElementId b) const { return forward_[static_cast<std::size_t>(b)] >= 0; }

    int fork_depth = 0;
    int cycle = 0;
    std::vector<MatchId> selections;

private:
    friend class GibsonEngine;

    const MatchSet* matches_;
    std::vector<MatchId> known_;
    std::vector<char> known_flag_;
    std::vector<MatchId> candidates_;
    std::vector<ElementId> forward_;
    std::vector<ElementId> backward_;
    std::size_t mapped_base_ = 0;
    std::size_t mapped_base_entities_ = 0;
};

/// BestMapPotential of `m` against the state. The new-match set is `m` plus
/// the members of its closure not yet known.
GibsonScore best_map_potential(const MatchHypothesis& m, const GibsonState& state, const MatchSet& matches);
GibsonScore best_map_potential(const MatchHypothesis& m, const GibsonState& state,
                               std::span<const MatchId> closure);
/// Static part only: the score with an empty known set.
GibsonScore static_potential(const MatchHypothesis& m);

struct GibsonOptions {
    int fork_cap = 8;
    /// Stop once every base entity is mapped, rather than every base element.
    bool entities_only_termination = false;
};

struct GibsonResult {
    std::vector<GMap> gmaps;  // ranked: score desc, then sorted member list asc
    int cycles_to_best = 0;
    int forks_taken = 0;
    int branches = 0;
};

/// Iterative BestMapPotential selection with forking on ties. At most
/// `fork_cap` branches are ever created; surplus ties fall to the lowest
/// match id.
GibsonResult gibson_map(const MatchSet& matches, const GibsonOptions& options = {});

/// Share of the identity pairing recovered by `gmap` on a self-comparison, in
/// percent. The identity ranges over elements occurring in some fact; an
/// empty identity counts as 100.
double percent_correct(const MatchSet& self_matches, const GMap& gmap);

}  // namespace analogy
