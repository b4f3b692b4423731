#pragma once

// Brute-force reference computations shared by the unit and acceptance tests.
// None of them go through the library's series, decomposition or samplers.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "blockmap/decomposition.hpp"
#include "blockmap/half_edge_map.hpp"

namespace oracle {

/// Every labelled planar map with n edges, alpha(2i) = 2i+1 and root 0, obtained by
/// trying all rotations sigma. There are m_n 2^{n-1} (n-1)! of them.
std::vector<blockmap::HalfEdgeMap> labelled_maps(int n);

/// One representative per rooted map with n edges.
std::vector<blockmap::HalfEdgeMap> rooted_maps(int n);

/// Number of blocks of a connected map via cut vertices: 1 + sum_v (c(v) + loops(v) - 1),
/// where c(v) counts the components of the loopless graph minus v around v.
int block_count(const blockmap::HalfEdgeMap& m);

/// Vertex of each half-edge, numbering sigma-cycles by their smallest half-edge.
std::vector<int> vertex_ids(const blockmap::HalfEdgeMap& m, int& count);

/// All-pairs vertex distances by Floyd-Warshall.
std::vector<std::vector<int>> all_distances(const blockmap::HalfEdgeMap& m);
int diameter(const blockmap::HalfEdgeMap& m);

/// Ordered trees with `edges` edges and even outdegrees, as preorder outdegree lists.
std::vector<std::vector<std::int32_t>> even_trees(int edges);

/// Probability of each tree in even_trees(edges) under GW(mu) conditioned on the size,
/// where mass(j) is the probability of outdegree 2j.
template <typename Mass>
std::map<std::vector<std::int32_t>, double> tree_law(int edges, Mass&& mass) {
  std::map<std::vector<std::int32_t>, double> law;
  double total = 0;
  for (const auto& t : even_trees(edges)) {
    double p = 1;
    for (auto d : t) p *= mass(d / 2);
    law[t] = p;
    total += p;
  }
  for (auto& [t, p] : law) p /= total;
  return law;
}

/// Upper tail P(X >= x) of a chi-square variable with k degrees of freedom.
double chi_square_sf(double x, double k);

/// Two-sample chi-square test on count maps of equal total; categories with fewer
/// than 10 pooled counts are merged. Returns the p-value.
template <typename Key>
double two_sample_p(const std::map<Key, long>& a, const std::map<Key, long>& b) {
  std::map<Key, std::pair<long, long>> joint;
  for (const auto& [k, c] : a) joint[k].first += c;
  for (const auto& [k, c] : b) joint[k].second += c;
  double stat = 0;
  long ra = 0, rb = 0;
  int cells = 0;
  auto add = [&](long x, long y) {
    if (x + y == 0) return;
    stat += static_cast<double>((x - y) * (x - y)) / static_cast<double>(x + y);
    ++cells;
  };
  for (const auto& [k, c] : joint) {
    if (c.first + c.second < 10) {
      ra += c.first;
      rb += c.second;
    } else {
      add(c.first, c.second);
    }
  }
  add(ra, rb);
  return cells < 2 ? 1.0 : chi_square_sf(stat, cells - 1);
}

/// Law of the nonincreasing list of half outdegrees of a GW tree with 2n edges,
/// from the cycle lemma: a multiset of 2n+1 half-degrees is carried by
/// multinomial / (2n+1) trees.
using RankedLaw = std::map<std::vector<int>, double>;
RankedLaw ranked_conditioned_law(int n, const std::function<double(std::int64_t)>& mass);
/// The same list for 2n i.i.d. half-degrees with sum s <= n plus one extra of n - s.
RankedLaw ranked_janson_law(int n, const std::function<double(std::int64_t)>& mass);
double total_variation(const RankedLaw& a, const RankedLaw& b);

}  // namespace oracle
