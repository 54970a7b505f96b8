#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loopym/error.hpp"

namespace loopym {

using Vertex = int;

struct OrientedEdge {
  Vertex tail = -1;
  Vertex head = -1;
  friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

// Finite simple connected graph with a deterministic vertex order and a fixed
// positive orientation per edge (tail < head in that order). Immutable after
// construction.
class Graph {
 public:
  enum class Kind { Torus, Cycle, Complete, Explicit };

  static Graph torus(int L, int n);
  static Graph cycle(int m);
  static Graph complete(int m);
  static Graph explicit_graph(std::vector<std::string> names,
                              const std::vector<std::pair<std::string, std::string>>& edges);

  Kind kind() const { return kind_; }
  int torus_L() const { return L_; }
  int torus_n() const { return n_; }
  bool is_torus() const { return kind_ == Kind::Torus; }

  int num_vertices() const { return static_cast<int>(names_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::string& name(Vertex v) const { return names_[v]; }
  Vertex vertex_by_name(const std::string& name) const;  // raises UnknownVertex

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

  // Edge {u,v} with u < v; index into edges().
  const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
  int edge_index(Vertex x, Vertex y) const;  // -1 if {x,y} is not an edge
  bool has_edge(Vertex x, Vertex y) const { return edge_index(x, y) >= 0; }

  // Oriented edge id in [0, 2|E|): 2e for the positive direction, 2e+1 reversed.
  int oriented_index(Vertex x, Vertex y) const;  // raises NotAnEdge
  OrientedEdge oriented_edge(int oid) const;
  int num_oriented() const { return 2 * num_edges(); }

  // Torus coordinates; vertex order is lexicographic in the coordinate vector.
  std::vector<int> torus_coords(Vertex v) const;
  Vertex torus_vertex(const std::vector<int>& coords) const;
  Vertex torus_step(Vertex v, int axis, int dir) const;  // dir = +1 or -1

 private:
  Graph() = default;
  void finalize();  // builds adjacency + edge lookup, checks simple/connected

  Kind kind_ = Kind::Explicit;
  int L_ = 0, n_ = 0;
  std::vector<std::string> names_;
  std::vector<std::pair<Vertex, Vertex>> edges_;      // sorted, u < v
  std::vector<std::vector<Vertex>> adj_;              // sorted neighbor lists
  std::vector<std::vector<std::pair<Vertex, int>>> edge_of_;  // per-vertex (nbr, edge id)
};

struct SpanningTree {
  Vertex root = 0;
  std::vector<Vertex> parent;      // parent[root] = root
  std::vector<int> parent_edge;    // edge id towards parent; -1 at root
  std::vector<Vertex> bfs_order;   // root first
};

// Breadth-first tree; neighbors explored in the graph's vertex order.
SpanningTree spanning_tree(const Graph& g, Vertex root);

}  // namespace loopym
