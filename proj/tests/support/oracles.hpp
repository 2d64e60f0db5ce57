#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "generators.hpp"

namespace morpho::fixtures {

/// Direct evaluation from the scenario's own relation and atom tables.
/// [B] is {eta : B_eta inside X}; <B> is {eta : B_eta meets X}.
Extent oracle_sat(const Scenario& s, const Formula& f);

/// Image of X under the relation: {b : a in X, b in B_a}.
Extent oracle_image(const Relation& rel, const Extent& x);
/// {a : B_a inside X}.
Extent oracle_erode(const Relation& rel, const Extent& x);

bool subset(const Extent& a, const Extent& b);
bool meets(const Extent& a, const Extent& b);
Extent intersect(const Extent& a, const Extent& b);
Extent unite(const Extent& a, const Extent& b);
Extent complement(const Extent& a);
bool empty(const Extent& a);

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Multi-source BFS distances from `from` along the relation.
std::vector<std::size_t> bfs_distances(const Relation& rel, const Extent& from);
std::size_t bfs_min_distance(const Relation& rel, const Extent& a, const Extent& b);
std::size_t bfs_hausdorff(const Relation& rel, const Extent& a, const Extent& b);

/// Classical truth table over at most 16 letters.
bool truth_table_tautology(const Formula& skeleton);

}  // namespace morpho::fixtures
