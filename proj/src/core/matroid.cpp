#include "matroid.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace mumford {

bool independence(const MatroidRep& rep, const std::vector<size_t>& subset) {
  if (subset.empty()) return true;
  std::vector<IntVec> cols;
  for (size_t i : subset) {
    if (i >= rep.ground_size) throw std::invalid_argument("independence: index out of range");
    cols.push_back(rep.columns.col(i));
  }
  return rank(IntMat::from_cols(cols)) == subset.size();
}

MatroidRep cographic_rep(const Graph& g, const std::vector<size_t>& spanning_forest) {
  size_t n = g.vertices, k = g.edges.size();
  for (auto [u, v] : g.edges)
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
  std::vector<bool> in_forest(k, false);
  for (size_t e : spanning_forest) {
    if (e >= k) throw std::invalid_argument("forest edge index out of range");
    if (in_forest[e]) throw std::invalid_argument("duplicate forest edge");
    in_forest[e] = true;
  }

  // Union-find: the forest edges must be acyclic and connect every component
  // of the graph.
  std::vector<size_t> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t e : spanning_forest) {
    size_t a = find(g.edges[e].first), b = find(g.edges[e].second);
    if (a == b) throw std::invalid_argument("forest contains a cycle");
    parent[a] = b;
  }
  {
    std::vector<size_t> p2 = parent;
    std::function<size_t(size_t)> find2 = [&](size_t x) {
      while (p2[x] != x) x = p2[x] = p2[p2[x]];
      return x;
    };
    for (auto [u, v] : g.edges)
      if (find2(u) != find2(v))
        throw std::invalid_argument("edge set fails to span (graph edge joins two forest trees)");
  }

  // Forest adjacency for path finding.
  std::vector<std::vector<std::pair<size_t, size_t>>> adj(n);  // (neighbor, edge)
  for (size_t e : spanning_forest) {
    adj[g.edges[e].first].push_back({g.edges[e].second, e});
    adj[g.edges[e].second].push_back({g.edges[e].first, e});
  }
  // Signed forest path from `from` to `to`: +1 per edge traversed along its
  // orientation.
  auto forest_path = [&](size_t from, size_t to) {
    std::vector<Int> coef(k, Int(0));
    if (from == to) return coef;
    std::vector<int> prev_edge(n, -1);
    std::vector<size_t> prev_node(n, n);
    std::vector<bool> seen(n, false);
    std::vector<size_t> stack = {from};
    seen[from] = true;
    while (!stack.empty()) {
      size_t x = stack.back();
      stack.pop_back();
      if (x == to) break;
      for (auto [y, e] : adj[x]) {
        if (seen[y]) continue;
        seen[y] = true;
        prev_edge[y] = (int)e;
        prev_node[y] = x;
        stack.push_back(y);
      }
    }
    size_t cur = to;
    while (cur != from) {
      size_t e = (size_t)prev_edge[cur];
      size_t px = prev_node[cur];
      // Traversed px -> cur; orientation of e is edges[e].first -> .second.
      coef[e] += g.edges[e].first == px ? Int(1) : Int(-1);
      cur = px;
    }
    return coef;
  };

  // Fundamental circuits: for each non-forest edge e = (u,v), the cycle
  // e + (forest path v -> u), as a 1-chain in Z^E.
  std::vector<std::vector<Int>> circuits;
  for (size_t e = 0; e < k; ++e) {
    if (in_forest[e]) continue;
    std::vector<Int> c = forest_path(g.edges[e].second, g.edges[e].first);
    c[e] += 1;
    circuits.push_back(std::move(c));
  }

  // Column of edge i = (coefficient of edge i in each circuit).
  size_t gg = circuits.size();
  IntMat cols(gg, k);
  for (size_t j = 0; j < gg; ++j)
    for (size_t i = 0; i < k; ++i) cols.at(j, i) = circuits[j][i];
  return MatroidRep{k, gg, cols};
}

std::vector<IntMat> matroidal_cone(const MatroidRep& rep) {
  std::vector<IntMat> out;
  for (size_t i = 0; i < rep.ground_size; ++i) {
    IntVec x = rep.columns.col(i);
    IntMat b(rep.rank_ambient, rep.rank_ambient);
    for (size_t r = 0; r < rep.rank_ambient; ++r)
      for (size_t c = 0; c < rep.rank_ambient; ++c) b.at(r, c) = x[r] * x[c];
    out.push_back(std::move(b));
  }
  return out;
}

MatroidRep r10() {
  const int entries[5][10] = {
      {1, 0, 0, 0, 0, -1, 1, 0, 0, 1},
      {0, 1, 0, 0, 0, 1, -1, 1, 0, 0},
      {0, 0, 1, 0, 0, 0, 1, -1, 1, 0},
      {0, 0, 0, 1, 0, 0, 0, 1, -1, 1},
      {0, 0, 0, 0, 1, 1, 0, 0, 1, -1},
  };
  IntMat m(5, 10);
  for (size_t i = 0; i < 5; ++i)
    for (size_t j = 0; j < 10; ++j) m.at(i, j) = entries[i][j];
  return MatroidRep{10, 5, m};
}

bool check_matroid_axioms(const MatroidRep& rep) {
  size_t k = rep.ground_size;
  if (k > 16) throw std::invalid_argument("axiom check is exhaustive; ground set too large");
  std::vector<bool> indep(size_t(1) << k, false);
  auto members = [&](size_t mask) {
    std::vector<size_t> s;
    for (size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1) s.push_back(i);
    return s;
  };
  for (size_t mask = 0; mask < (size_t(1) << k); ++mask)
    indep[mask] = independence(rep, members(mask));

  if (!indep[0]) return false;  // axiom (1)
  for (size_t mask = 0; mask < (size_t(1) << k); ++mask) {
    if (!indep[mask]) continue;
    // axiom (2): subsets of independent sets are independent
    for (size_t i = 0; i < k; ++i)
      if (((mask >> i) & 1) && !indep[mask & ~(size_t(1) << i)]) return false;
  }
  // axiom (3): exchange
  for (size_t a = 0; a < (size_t(1) << k); ++a) {
    if (!indep[a]) continue;
    for (size_t b = 0; b < (size_t(1) << k); ++b) {
      if (!indep[b]) continue;
      if (members(a).size() <= members(b).size()) continue;
      bool found = false;
      for (size_t i = 0; i < k && !found; ++i)
        if (((a >> i) & 1) && !((b >> i) & 1) && indep[b | (size_t(1) << i)]) found = true;
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace mumford
