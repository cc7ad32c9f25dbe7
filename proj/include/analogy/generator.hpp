#pragma once

#include "analogy/domain.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace analogy {

/// Parameters for random domain generation.
///
/// Every generated expression takes a fresh predicate name, except that with
/// probability `ambiguity` it reuses one of `predicate_pool` shared names for
/// its kind and arity. The first fact always reaches `max_level`.
struct GeneratorSpec {
    int n_entities = 8;
    int n_facts = 8;
    int max_level = 2;
    int predicate_pool = 4;
    double ambiguity = 0.5;
    std::uint64_t seed = 1;
};

class InfeasibleSpec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Throws InfeasibleSpec when a count is non-positive, ambiguity lies outside
/// [0, 1], or max_level exceeds kMaxGeneratedLevel.
Domain generate_domain(const GeneratorSpec& spec, std::string name = "generated");

inline constexpr int kMaxGeneratedLevel = 16;

}  // namespace analogy
