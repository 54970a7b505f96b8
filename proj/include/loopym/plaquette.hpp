#pragma once

#include <vector>

#include "loopym/loop.hpp"

namespace loopym {

// All oriented plaquette loops of the discrete torus, one per (base vertex,
// ordered axis pair); n(n-1) L^n of them, both orientations of each square.
std::vector<Loop> enumerate_plaquettes(const Graph& g);

struct PlaquetteCrossing {
  Loop loop;
  int index;  // position of the crossing of the queried edge in loop.word()
};

// The 2(n-1) plaquettes crossing the oriented edge e, each with its crossing index.
std::vector<PlaquetteCrossing> plaquettes_containing(const Graph& g, OrientedEdge e);

// Cached census for the Monte Carlo paths: full list plus a per-oriented-edge
// table of (plaquette list index, crossing index).
struct PlaquetteTables {
  std::vector<Loop> all;
  std::vector<std::vector<std::pair<int, int>>> containing;  // [oriented id]

  explicit PlaquetteTables(const Graph& g);
};

}  // namespace loopym
