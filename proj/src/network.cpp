#include "loopym/network.hpp"

namespace loopym {

int64_t Network::at(Vertex x, Vertex y) const {
  int e = g_->edge_index(x, y);
  if (e < 0) return 0;
  return counts_[2 * e + (x < y ? 0 : 1)];
}

void Network::set(Vertex x, Vertex y, int64_t v) {
  counts_[g_->oriented_index(x, y)] = v;
}

void Network::add(Vertex x, Vertex y, int64_t v) {
  counts_[g_->oriented_index(x, y)] += v;
}

int64_t Network::out_sum(Vertex x) const {
  int64_t s = 0;
  for (Vertex y : g_->neighbors(x)) s += at(x, y);
  return s;
}

int64_t Network::in_sum(Vertex x) const {
  int64_t s = 0;
  for (Vertex y : g_->neighbors(x)) s += at(y, x);
  return s;
}

int64_t Network::total() const {
  int64_t s = 0;
  for (int64_t v : counts_) s += v;
  return s;
}

bool Network::is_eulerian() const {
  for (Vertex x = 0; x < g_->num_vertices(); ++x)
    if (out_sum(x) != in_sum(x)) return false;
  return true;
}

bool Network::is_flow() const {
  if (!is_eulerian()) return false;
  for (int e = 0; e < g_->num_edges(); ++e)
    if (counts_[2 * e] != 0 && counts_[2 * e + 1] != 0) return false;
  return true;
}

bool operator==(const Network& a, const Network& b) { return a.counts_ == b.counts_; }

Network occupation(const Graph& g, const LoopCollection& c) {
  Network n(g);
  for (const auto& [l, m] : c.entries()) {
    int p = l.length();
    for (int i = 0; i < p; ++i) n.add(l.word()[i], l.word()[(i + 1) % p], m);
  }
  return n;
}

Network occupation(const Graph& g, const Loop& l) {
  return occupation(g, LoopCollection({l}));
}

Network flow_of(const Network& k) {
  if (!k.is_eulerian()) raise(Errc::NotEulerian);
  const Graph& g = k.graph();
  Network j(g);
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edges()[e];
    int64_t d = k.at(u, v) - k.at(v, u);
    if (d > 0)
      j.set(u, v, d);
    else if (d < 0)
      j.set(v, u, -d);
  }
  return j;
}

std::vector<std::vector<double>> markov_of_flow(const Network& j) {
  if (!j.is_flow()) raise(Errc::NotAFlow);
  const Graph& g = j.graph();
  int n = g.num_vertices();
  std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
  for (Vertex x = 0; x < n; ++x) {
    int64_t jx = j.out_sum(x);
    if (jx == 0) {
      q[x][x] = 1.0;
      continue;
    }
    for (Vertex y : g.neighbors(x))
      q[x][y] = static_cast<double>(j.at(x, y)) / static_cast<double>(jx);
  }
  return q;
}

OccupationStats stats_of(const Network& n) {
  const Graph& g = n.graph();
  OccupationStats s;
  s.N_x.assign(g.num_vertices(), 0);
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    s.N_x[x] = n.out_sum(x);
    s.S += s.N_x[x];
    s.V += s.N_x[x] * s.N_x[x];
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    int64_t a = n.raw()[2 * e];
    int64_t b = n.raw()[2 * e + 1];
    s.Vplus += a * a + b * b;
    s.Vminus += 2 * a * b;
  }
  return s;
}

OccupationStats stats(const Graph& g, const LoopCollection& c) {
  return stats_of(occupation(g, c));
}

}  // namespace loopym
