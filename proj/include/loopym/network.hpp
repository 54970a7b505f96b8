#pragma once

#include <cstdint>
#include <vector>

#include "loopym/loop.hpp"

namespace loopym {

// N-valued function on oriented edges; zero off the edge set, zero diagonal.
class Network {
 public:
  explicit Network(const Graph& g) : g_(&g), counts_(g.num_oriented(), 0) {}

  const Graph& graph() const { return *g_; }

  int64_t at(Vertex x, Vertex y) const;
  void set(Vertex x, Vertex y, int64_t v);
  void add(Vertex x, Vertex y, int64_t v);

  int64_t out_sum(Vertex x) const;  // sum_y k_{x,y}
  int64_t in_sum(Vertex x) const;   // sum_y k_{y,x}
  int64_t total() const;            // |k| = sum_x k_x (Eulerian convention)

  bool is_eulerian() const;
  bool is_flow() const;  // Eulerian and k_{x,y} k_{y,x} = 0 on every edge

  friend bool operator==(const Network&, const Network&);

  const std::vector<int64_t>& raw() const { return counts_; }

 private:
  const Graph* g_;
  std::vector<int64_t> counts_;  // indexed by oriented edge id
};

// Edge occupation field N_{x,y} of a collection; always Eulerian.
Network occupation(const Graph& g, const LoopCollection& c);
Network occupation(const Graph& g, const Loop& l);

// J(k)_{x,y} = max(k_{x,y} - k_{y,x}, 0); requires k Eulerian.
Network flow_of(const Network& k);

// Row-stochastic matrix q[j]; requires j a flow. Row x is delta_x when j_x = 0.
std::vector<std::vector<double>> markov_of_flow(const Network& j);

struct OccupationStats {
  int64_t S = 0;       // sum_x N_x
  int64_t V = 0;       // sum_x N_x^2
  int64_t Vplus = 0;   // sum_{edges} N_{x,y}^2 + N_{y,x}^2
  int64_t Vminus = 0;  // 2 sum_{edges} N_{x,y} N_{y,x}
  std::vector<int64_t> N_x;
};

OccupationStats stats(const Graph& g, const LoopCollection& c);
OccupationStats stats_of(const Network& n);

}  // namespace loopym
