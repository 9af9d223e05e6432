#ifndef NCODE_SEARCH_HPP
#define NCODE_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ncode/code.hpp"

namespace ncode {

struct SearchOptions {
    std::optional<std::size_t> max_size_hint; // stop deepening past this
    std::uint64_t node_limit = 100'000'000;
    bool collect_witnesses = true;
    std::size_t witness_limit = 64;
};

struct SearchResult {
    int d = 0;
    int n = 0;
    std::size_t max_size = 0;
    // Canonical representatives achieving max_size.
    std::vector<Code> witnesses;
    std::uint64_t nodes_explored = 0;
    bool exhaustive = true; // false iff node_limit was hit
};

// Exact maximum cardinality of a neighborly d-code without twin pairs of
// word length n, by depth-first extension of sorted partial codes with
// orderly (canonical-form) symmetry breaking. Throws BadParameters.
SearchResult search_max(int d, int n, const SearchOptions& opts = {});

// Pruning-free enumeration over sorted word lists; cross-check for the
// orderly search at tiny (d, n).
std::size_t naive_search_max(int d, int n);

// Independent validator: true iff V is a neighborly d-code without twin
// pairs. Direct quadratic letter comparisons; shares nothing with
// validate()/classify_pair beyond Letter.
bool oracle_check(const Code& v, int d);

struct RandomCodeOptions {
    bool twin_free = true;
    std::size_t max_attempts = 0; // 0 = 200 * target + 200
};

// Deterministic-for-seed greedy construction: draw random d-proper words,
// keep those neighborly (and twin-free when configured) with everything
// kept so far. Always a valid neighborly d-code, possibly below target.
Code random_code(int d, int n, std::uint64_t seed, std::size_t target,
                 const RandomCodeOptions& opts = {});

} // namespace ncode

#endif
