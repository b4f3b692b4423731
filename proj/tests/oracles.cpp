#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

namespace oracle {

using blockmap::HalfEdge;
using blockmap::HalfEdgeMap;

namespace {

int count_cycles(const std::vector<HalfEdge>& perm) {
  std::vector<char> seen(perm.size(), 0);
  int cycles = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (auto j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) seen[j] = 1;
  }
  return cycles;
}

bool transitive(const std::vector<HalfEdge>& alpha, const std::vector<HalfEdge>& sigma) {
  std::vector<char> seen(alpha.size(), 0);
  std::vector<HalfEdge> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto h = static_cast<std::size_t>(stack.back());
    stack.pop_back();
    for (auto g : {alpha[h], sigma[h]}) {
      if (!seen[static_cast<std::size_t>(g)]) {
        seen[static_cast<std::size_t>(g)] = 1;
        ++reached;
        stack.push_back(g);
      }
    }
  }
  return reached == alpha.size();
}

}  // namespace

std::vector<int> vertex_ids(const HalfEdgeMap& m, int& count) {
  std::vector<int> id(m.half_edge_count(), -1);
  count = 0;
  for (std::size_t h = 0; h < id.size(); ++h) {
    if (id[h] >= 0) continue;
    for (auto g = static_cast<HalfEdge>(h); id[static_cast<std::size_t>(g)] < 0; g = m.sigma(g))
      id[static_cast<std::size_t>(g)] = count;
    ++count;
  }
  return id;
}

std::vector<HalfEdgeMap> labelled_maps(int n) {
  const auto h = static_cast<std::size_t>(2 * n);
  std::vector<HalfEdge> alpha(h), sigma(h);
  for (std::size_t i = 0; i < h; ++i) alpha[i] = static_cast<HalfEdge>(i ^ 1);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<HalfEdgeMap> out;
  do {
    if (!transitive(alpha, sigma)) continue;
    std::vector<HalfEdge> phi(h);
    for (std::size_t i = 0; i < h; ++i) phi[i] = sigma[static_cast<std::size_t>(alpha[i])];
    if (count_cycles(sigma) - n + count_cycles(phi) != 2) continue;
    out.emplace_back(alpha, sigma, 0);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

std::vector<HalfEdgeMap> rooted_maps(int n) {
  if (n == 0) return {HalfEdgeMap::vertex_map()};
  std::vector<HalfEdgeMap> out;
  for (const auto& m : labelled_maps(n)) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const HalfEdgeMap& o) { return blockmap::same_rooted_map(o, m); });
    if (!seen) out.push_back(m);
  }
  return out;
}

int block_count(const HalfEdgeMap& m) {
  if (m.half_edge_count() == 0) return 0;
  int nv = 0;
  const auto vid = vertex_ids(m, nv);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nv));
  std::vector<int> loops(static_cast<std::size_t>(nv), 0);
  for (std::size_t h = 0; h < m.half_edge_count(); ++h) {
    const int a = vid[h], b = vid[static_cast<std::size_t>(m.alpha(static_cast<HalfEdge>(h)))];
    if (a == b) {
      ++loops[static_cast<std::size_t>(a)];  // counted from both half-edges
    } else {
      adj[static_cast<std::size_t>(a)].push_back(b);
    }
  }
  int blocks = 1;
  for (int v = 0; v < nv; ++v) {
    // Components of G - v that contain a neighbour of v.
    std::vector<int> comp(static_cast<std::size_t>(nv), -1);
    int c = 0;
    for (int s : adj[static_cast<std::size_t>(v)]) {
      if (comp[static_cast<std::size_t>(s)] >= 0) continue;
      std::vector<int> stack{s};
      comp[static_cast<std::size_t>(s)] = c;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (int y : adj[static_cast<std::size_t>(x)]) {
          if (y == v || comp[static_cast<std::size_t>(y)] >= 0) continue;
          comp[static_cast<std::size_t>(y)] = c;
          stack.push_back(y);
        }
      }
      ++c;
    }
    const int beta = c + loops[static_cast<std::size_t>(v)] / 2;
    blocks += beta - 1;
  }
  return blocks;
}

std::vector<std::vector<int>> all_distances(const HalfEdgeMap& m) {
  int nv = 0;
  const auto vid = vertex_ids(m, nv);
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(static_cast<std::size_t>(nv), std::vector<int>(static_cast<std::size_t>(nv), inf));
  for (int v = 0; v < nv; ++v) d[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] = 0;
  for (std::size_t h = 0; h < m.half_edge_count(); ++h) {
    const auto a = static_cast<std::size_t>(vid[h]);
    const auto b = static_cast<std::size_t>(vid[static_cast<std::size_t>(m.alpha(static_cast<HalfEdge>(h)))]);
    if (a != b) d[a][b] = 1;
  }
  for (std::size_t k = 0; k < d.size(); ++k)
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < d.size(); ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

int diameter(const HalfEdgeMap& m) {
  int best = 0;
  for (const auto& row : all_distances(m))
    for (int x : row) best = std::max(best, x);
  return best;
}

std::vector<std::vector<std::int32_t>> even_trees(int edges) {
  // Preorder outdegree words with the Lukasiewicz property, built node by node.
  std::vector<std::vector<std::int32_t>> out;
  std::vector<std::int32_t> word;
  const int nodes = edges + 1;
  std::function<void(int)> grow = [&](int open) {
    const int placed = static_cast<int>(word.size());
    if (placed == nodes) {
      if (open == 0) out.push_back(word);
      return;
    }
    if (open == 0) return;
    for (int d = 0; placed + 1 + (open - 1 + d) <= nodes + 0 && d <= edges; d += 2) {
      word.push_back(d);
      grow(open - 1 + d);
      word.pop_back();
    }
  };
  grow(1);
  return out;
}

namespace {

// Nonincreasing lists of `parts` nonnegative integers with the given sum.
void partitions(int sum, int parts, int largest, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
  if (parts == 0) {
    if (sum == 0) f(cur);
    return;
  }
  for (int p = std::min(sum, largest); p >= 0; --p) {
    cur.push_back(p);
    partitions(sum - p, parts - 1, p, cur, f);
    cur.pop_back();
  }
}

// Arrangements of a multiset, and the product of masses, as one weight.
double weight(const std::vector<int>& ms, const std::function<double(std::int64_t)>& mass) {
  double w = std::lgamma(static_cast<double>(ms.size()) + 1);
  for (std::size_t i = 0; i < ms.size();) {
    std::size_t j = i;
    while (j < ms.size() && ms[j] == ms[i]) ++j;
    w -= std::lgamma(static_cast<double>(j - i) + 1);
    i = j;
  }
  double p = std::exp(w);
  for (int x : ms) p *= mass(x);
  return p;
}

RankedLaw normalised(RankedLaw law) {
  double total = 0;
  for (const auto& [k, p] : law) total += p;
  for (auto& [k, p] : law) p /= total;
  return law;
}

}  // namespace

RankedLaw ranked_conditioned_law(int n, const std::function<double(std::int64_t)>& mass) {
  RankedLaw law;
  std::vector<int> cur;
  partitions(n, 2 * n + 1, n, cur, [&](const std::vector<int>& ms) { law[ms] += weight(ms, mass); });
  return normalised(std::move(law));
}

RankedLaw ranked_janson_law(int n, const std::function<double(std::int64_t)>& mass) {
  RankedLaw law;
  std::vector<int> cur;
  for (int s = 0; s <= n; ++s)
    partitions(s, 2 * n, s, cur, [&](const std::vector<int>& ms) {
      auto key = ms;
      key.push_back(n - s);
      std::sort(key.begin(), key.end(), std::greater<>());
      law[key] += weight(ms, mass);
    });
  return normalised(std::move(law));
}

double total_variation(const RankedLaw& a, const RankedLaw& b) {
  double tv = 0;
  for (const auto& [k, p] : a) {
    const auto it = b.find(k);
    tv += std::abs(p - (it == b.end() ? 0 : it->second));
  }
  for (const auto& [k, p] : b)
    if (!a.count(k)) tv += p;
  return tv / 2;
}

double chi_square_sf(double x, double k) { return boost::math::gamma_q(k / 2, x / 2); }

}  // namespace oracle
