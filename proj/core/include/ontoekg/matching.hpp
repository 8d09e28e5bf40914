#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace ontoekg {

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

/// Left-to-right adjacency: adj[l] lists the right vertices l may pair with.
using BipartiteAdjacency = std::vector<std::vector<std::size_t>>;

/// Maximum-cardinality matching (Hopcroft-Karp). Returns, per left vertex,
/// its partner or kUnmatched.
std::vector<std::size_t> hopcroft_karp(const BipartiteAdjacency& adj, std::size_t n_right);

/// Among all maximum-cardinality matchings, the one whose (left, right)
/// pair list sorted by left vertex is lexicographically smallest.
std::vector<std::pair<std::size_t, std::size_t>> lexicographic_max_matching(
    const BipartiteAdjacency& adj, std::size_t n_right);

}  // namespace ontoekg
