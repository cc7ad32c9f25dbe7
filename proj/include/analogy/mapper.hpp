#pragma once

#include "analogy/matcher.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace analogy {

using Correspondence = std::pair<ElementId, ElementId>;

/// A root match together with its downward closure.
struct PMap {
    MatchId root_match = 0;
    std::vector<MatchId> members;  // sorted ascending
    std::vector<Correspondence> entity_correspondences;
    std::int64_t ses = 0;
    bool internally_consistent = true;
};

/// One global interpretation: a one-to-one, closure-complete match set.
struct GMap {
    std::vector<MatchId> members;               // sorted ascending
    std::vector<Correspondence> correspondences;  // sorted by base element
    std::int64_t score = 0;
    /// Merged p-map indices (SME strategies) or selected match ids in
    /// selection order (GIBSON).
    std::vector<int> provenance;
};

/// Σ (1 + base level) over `members`.
std::int64_t score_of(const MatchSet& matches, std::span<const MatchId> members);
std::int64_t ses(const MatchSet& matches, const PMap& pmap);

/// True iff `members` pairs every base and every target element at most once.
bool is_one_to_one(const MatchSet& matches, std::span<const MatchId> members);
/// True iff every argument match of every member is itself a member.
bool is_closed(const MatchSet& matches, std::span<const MatchId> members);

GMap make_gmap(const MatchSet& matches, std::vector<MatchId> members, std::vector<int> provenance = {});

/// One p-map per root match (a valid expression match that is no valid
/// match's argument), ordered by descending SES then root match id.
std::vector<PMap> build_pmaps(const MatchSet& matches);

std::size_t consistent_count(std::span<const PMap> pmaps);

/// SME merge: seed with the best unconsumed p-map, fold in every other
/// consistent p-map in rank order that keeps the union one-to-one, and repeat
/// until every consistent p-map lies inside some g-map. G-maps come back in
/// construction order.
std::vector<GMap> greedy_merge(const MatchSet& matches, std::span<const PMap> pmaps);

class MergeBudgetExceeded : public std::runtime_error {
public:
    MergeBudgetExceeded(std::size_t consistent, std::size_t cap);
    std::size_t consistent_pmaps;
    std::size_t cap;
};

inline constexpr std::size_t kDefaultPmapCap = 20;

/// Exhaustive search over consistent p-map unions. Returns the best-scoring
/// g-map; ties go to the lexicographically smaller sorted member list.
/// Throws MergeBudgetExceeded when more than `cap` consistent p-maps exist.
GMap optimal_merge(const MatchSet& matches, std::span<const PMap> pmaps, std::size_t cap = kDefaultPmapCap);

}  // namespace analogy
