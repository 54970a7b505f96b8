#include "loopym/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace loopym {

namespace {

std::string letter_name(int i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "v" + std::to_string(i);
}

}  // namespace

Graph Graph::torus(int L, int n) {
  if (L < 3) raise(Errc::TorusTooSmall, "torus requires L >= 3, got L = " + std::to_string(L));
  if (n < 2) raise(Errc::TorusTooSmall, "torus requires n >= 2, got n = " + std::to_string(n));
  Graph g;
  g.kind_ = Kind::Torus;
  g.L_ = L;
  g.n_ = n;
  int count = 1;
  for (int i = 0; i < n; ++i) count *= L;
  g.names_.reserve(count);
  std::vector<int> c(n, 0);
  for (int v = 0; v < count; ++v) {
    std::string name;
    for (int i = 0; i < n; ++i) {
      if (i) name += ',';
      name += std::to_string(c[i]);
    }
    g.names_.push_back(name);
    for (int i = n - 1; i >= 0; --i) {
      if (++c[i] < L) break;
      c[i] = 0;
    }
  }
  for (Vertex v = 0; v < count; ++v) {
    for (int axis = 0; axis < n; ++axis) {
      Vertex w = g.torus_step(v, axis, +1);
      if (v < w)
        g.edges_.emplace_back(v, w);
      else
        g.edges_.emplace_back(w, v);
    }
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());
  g.finalize();
  return g;
}

Graph Graph::cycle(int m) {
  if (m < 3) raise(Errc::SelfLoopOrMultiEdge, "cycle requires m >= 3");
  Graph g;
  g.kind_ = Kind::Cycle;
  for (int i = 0; i < m; ++i) g.names_.push_back(letter_name(i));
  for (int i = 0; i < m; ++i) {
    int j = (i + 1) % m;
    g.edges_.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.finalize();
  return g;
}

Graph Graph::complete(int m) {
  if (m < 2) raise(Errc::DisconnectedGraph, "complete requires m >= 2");
  Graph g;
  g.kind_ = Kind::Complete;
  for (int i = 0; i < m; ++i) g.names_.push_back(letter_name(i));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) g.edges_.emplace_back(i, j);
  g.finalize();
  return g;
}

Graph Graph::explicit_graph(std::vector<std::string> names,
                            const std::vector<std::pair<std::string, std::string>>& edges) {
  Graph g;
  g.kind_ = Kind::Explicit;
  g.names_ = std::move(names);
  for (size_t i = 0; i < g.names_.size(); ++i)
    for (size_t j = i + 1; j < g.names_.size(); ++j)
      if (g.names_[i] == g.names_[j]) raise(Errc::SelfLoopOrMultiEdge, "duplicate vertex name " + g.names_[i]);
  for (const auto& [a, b] : edges) {
    Vertex u = g.vertex_by_name(a);
    Vertex v = g.vertex_by_name(b);
    if (u == v) raise(Errc::SelfLoopOrMultiEdge, "self-loop at " + a);
    g.edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  for (size_t i = 1; i < g.edges_.size(); ++i)
    if (g.edges_[i] == g.edges_[i - 1]) raise(Errc::SelfLoopOrMultiEdge, "duplicate edge");
  g.finalize();
  return g;
}

void Graph::finalize() {
  int n = num_vertices();
  if (n == 0) raise(Errc::DisconnectedGraph, "empty graph");
  adj_.assign(n, {});
  edge_of_.assign(n, {});
  for (int e = 0; e < num_edges(); ++e) {
    auto [u, v] = edges_[e];
    if (u == v) raise(Errc::SelfLoopOrMultiEdge, "self-loop");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    edge_of_[u].emplace_back(v, e);
    edge_of_[v].emplace_back(u, e);
  }
  for (int v = 0; v < n; ++v) {
    std::sort(adj_[v].begin(), adj_[v].end());
    std::sort(edge_of_[v].begin(), edge_of_[v].end());
    for (size_t i = 1; i < adj_[v].size(); ++i)
      if (adj_[v][i] == adj_[v][i - 1]) raise(Errc::SelfLoopOrMultiEdge, "multiple edge");
  }
  std::vector<char> seen(n, 0);
  std::queue<Vertex> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (Vertex w : adj_[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push(w);
      }
  }
  if (reached != n) raise(Errc::DisconnectedGraph, "graph is not connected");
}

Vertex Graph::vertex_by_name(const std::string& name) const {
  for (int v = 0; v < num_vertices(); ++v)
    if (names_[v] == name) return v;
  raise(Errc::UnknownVertex, name);
}

int Graph::edge_index(Vertex x, Vertex y) const {
  if (x < 0 || y < 0 || x >= num_vertices() || y >= num_vertices()) return -1;
  Vertex u = std::min(x, y);
  const auto& lst = edge_of_[u];
  Vertex w = std::max(x, y);
  auto it = std::lower_bound(lst.begin(), lst.end(), std::make_pair(w, -1));
  if (it != lst.end() && it->first == w) return it->second;
  return -1;
}

int Graph::oriented_index(Vertex x, Vertex y) const {
  int e = edge_index(x, y);
  if (e < 0) raise(Errc::NotAnEdge, "(" + std::to_string(x) + "," + std::to_string(y) + ")");
  return 2 * e + (x < y ? 0 : 1);
}

OrientedEdge Graph::oriented_edge(int oid) const {
  auto [u, v] = edges_[oid / 2];
  if (oid % 2 == 0) return {u, v};
  return {v, u};
}

std::vector<int> Graph::torus_coords(Vertex v) const {
  if (!is_torus()) raise(Errc::NotATorus);
  std::vector<int> c(n_);
  for (int i = n_ - 1; i >= 0; --i) {
    c[i] = v % L_;
    v /= L_;
  }
  return c;
}

Vertex Graph::torus_vertex(const std::vector<int>& coords) const {
  if (!is_torus()) raise(Errc::NotATorus);
  Vertex v = 0;
  for (int i = 0; i < n_; ++i) v = v * L_ + ((coords[i] % L_) + L_) % L_;
  return v;
}

Vertex Graph::torus_step(Vertex v, int axis, int dir) const {
  if (!is_torus()) raise(Errc::NotATorus);
  int stride = 1;
  for (int i = axis + 1; i < n_; ++i) stride *= L_;
  int c = (v / stride) % L_;
  int cc = ((c + dir) % L_ + L_) % L_;
  return v + (cc - c) * stride;
}

SpanningTree spanning_tree(const Graph& g, Vertex root) {
  if (root < 0 || root >= g.num_vertices()) raise(Errc::UnknownVertex, std::to_string(root));
  SpanningTree t;
  t.root = root;
  t.parent.assign(g.num_vertices(), -1);
  t.parent_edge.assign(g.num_vertices(), -1);
  t.parent[root] = root;
  std::queue<Vertex> q;
  q.push(root);
  t.bfs_order.push_back(root);
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (Vertex w : g.neighbors(v)) {
      if (t.parent[w] >= 0) continue;
      t.parent[w] = v;
      t.parent_edge[w] = g.edge_index(v, w);
      t.bfs_order.push_back(w);
      q.push(w);
    }
  }
  return t;
}

}  // namespace loopym
