#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tori {

/// Permutation of {0..5}; p[i] is the image of i. Rendered 1-based.
using Perm = std::array<std::uint8_t, 6>;
/// Sorted, duplicate-free list of elements.
using Group = std::vector<Perm>;

Perm perm_identity();
/// (a * b)(i) = a(b(i)).
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);
/// Parses 1-based cycle notation such as "(135)(246)" or "()".
Perm parse_cycles(std::string_view s);
std::string cycle_string(const Perm& p);
int perm_order(const Perm& p);

Group closure(const std::vector<Perm>& gens);
bool contains(const Group& g, const Perm& p);
bool is_subgroup(const Group& h, const Group& g);
Group conjugate(const Group& g, const Perm& s);
/// Whether s G s^-1 = H for some s in S6.
bool conjugate_in_s6(const Group& g, const Group& h);
bool is_transitive(const Group& g);

/// Elements preserving the blocks {0,1}, {2,3}, {4,5}: the order-48 wreath product.
const Group& wreath48();
/// All subgroups of the wreath product, sorted by (order, elements).
const std::vector<Group>& wreath48_subgroups();
/// Order of the image of g acting on the three blocks.
int block_quotient_order(const Group& g);
/// Lexicographically first minimal generating set.
std::vector<Perm> minimal_generators(const Group& g);

/// Unordered index pairs (i < j) in lexicographic order.
std::vector<std::array<int, 2>> index_pairs();
/// Triples taking one index from each block, in lexicographic order.
std::vector<std::array<int, 3>> transversal_triples();
/// Orbit id of each object under the group, ids numbered by first occurrence.
std::vector<int> pair_orbits(const Group& g);
std::vector<int> triple_orbits(const Group& g);
std::vector<int> orbit_sizes(const std::vector<int>& orbit_ids);

}  // namespace tori
