#include "loopym/plaquette.hpp"

#include <algorithm>

namespace loopym {

std::vector<Loop> enumerate_plaquettes(const Graph& g) {
  if (!g.is_torus()) raise(Errc::NotATorus);
  int n = g.torus_n();
  std::vector<Loop> out;
  out.reserve(static_cast<size_t>(g.num_vertices()) * n * (n - 1));
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    for (int mu = 0; mu < n; ++mu) {
      for (int nu = 0; nu < n; ++nu) {
        if (mu == nu) continue;
        Vertex a = g.torus_step(v, mu, +1);
        Vertex b = g.torus_step(a, nu, +1);
        Vertex c = g.torus_step(v, nu, +1);
        out.push_back(Loop::from_word(g, {v, a, b, c}));
      }
    }
  }
  return out;
}

std::vector<PlaquetteCrossing> plaquettes_containing(const Graph& g, OrientedEdge e) {
  if (!g.is_torus()) raise(Errc::NotATorus);
  if (!g.has_edge(e.tail, e.head)) raise(Errc::NotAnEdge);
  int n = g.torus_n();
  Vertex x = e.tail, y = e.head;
  // The step direction: exactly one axis, +1 or -1.
  int axis = -1;
  for (int ax = 0; ax < n && axis < 0; ++ax)
    if (g.torus_step(x, ax, +1) == y || g.torus_step(x, ax, -1) == y) axis = ax;
  if (axis < 0) raise(Errc::NotAnEdge, "not a torus step");

  std::vector<PlaquetteCrossing> out;
  out.reserve(2 * (n - 1));
  for (int nu = 0; nu < n; ++nu) {
    if (nu == axis) continue;
    for (int side : {+1, -1}) {
      // Square spanned by the step (x -> y) and axis nu on the given side,
      // traversed so that (x, y) is the first step.
      Vertex a = y;
      Vertex b = g.torus_step(a, nu, side);
      Vertex c = g.torus_step(x, nu, side);
      std::vector<Vertex> word = {x, a, b, c};
      Loop l = Loop::from_word(g, word);
      auto cr = crossings(l, x, y);
      out.push_back({l, cr.at(0)});
    }
  }
  return out;
}

PlaquetteTables::PlaquetteTables(const Graph& g) {
  all = enumerate_plaquettes(g);
  containing.assign(g.num_oriented(), {});
  for (int oid = 0; oid < g.num_oriented(); ++oid) {
    OrientedEdge e = g.oriented_edge(oid);
    for (const auto& pc : plaquettes_containing(g, e)) {
      auto it = std::find(all.begin(), all.end(), pc.loop);
      containing[oid].emplace_back(static_cast<int>(it - all.begin()), pc.index);
    }
  }
}

}  // namespace loopym
