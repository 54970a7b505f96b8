#include "loopym/connection.hpp"

namespace loopym {

Mat Connection::matrix(Vertex x, Vertex y) const {
  int e = graph->edge_index(x, y);
  if (e < 0) raise(Errc::NotAnEdge);
  if (x < y) return edge[e];
  return edge[e].adjoint();
}

Connection Connection::trivial(const Graph& g, int d) {
  Connection m;
  m.graph = &g;
  m.d = d;
  m.edge.assign(g.num_edges(), Mat::Identity(d, d));
  return m;
}

Connection Connection::haar(const Graph& g, int d, Rng& rng) {
  Connection m = trivial(g, d);
  for (auto& e : m.edge) e = haar_sample(d, rng);
  return m;
}

GaugeField GaugeField::identity(const Graph& g, int d) {
  GaugeField f;
  f.graph = &g;
  f.d = d;
  f.site.assign(g.num_vertices(), Mat::Identity(d, d));
  return f;
}

GaugeField GaugeField::haar(const Graph& g, int d, Rng& rng) {
  GaugeField f = identity(g, d);
  for (auto& s : f.site) s = haar_sample(d, rng);
  return f;
}

Mat holonomy(const Connection& m, const Loop& l) {
  Mat h = Mat::Identity(m.d, m.d);
  int p = l.length();
  for (int i = 0; i < p; ++i) h = m.matrix(l.word()[i], l.word()[(i + 1) % p]) * h;
  return h;
}

Cplx tau_loop(const Connection& m, const Loop& l) {
  if (l.is_trivial()) return static_cast<double>(m.d);
  return holonomy(m, l).trace();
}

Cplx tau(const Connection& m, const LoopCollection& c) {
  Cplx out = 1.0;
  for (const auto& [l, mult] : c.entries()) {
    Cplx tr = tau_loop(m, l);
    for (int64_t i = 0; i < mult; ++i) out *= tr;
  }
  return out;
}

Cplx T_gauge_loop(const GaugeField& gf, const Loop& l) {
  if (l.is_trivial()) return static_cast<double>(gf.d);
  Mat h = Mat::Identity(gf.d, gf.d);
  for (int i = 0; i < l.length(); ++i) h = gf.site[l.word()[i]] * h;
  return h.trace();
}

Cplx T_gauge(const GaugeField& gf, const LoopCollection& c) {
  Cplx out = 1.0;
  for (const auto& [l, mult] : c.entries()) {
    Cplx tr = T_gauge_loop(gf, l);
    for (int64_t i = 0; i < mult; ++i) out *= tr;
  }
  return out;
}

Connection gauge_transform(const Connection& m, const GaugeField& gf) {
  if (m.graph != gf.graph || m.d != gf.d) raise(Errc::GraphMismatch);
  Connection out = m;
  for (int e = 0; e < m.graph->num_edges(); ++e) {
    auto [u, v] = m.graph->edges()[e];
    out.edge[e] = gf.site[v].adjoint() * m.edge[e] * gf.site[u];
  }
  return out;
}

std::pair<Connection, GaugeField> tree_gauge_fix(const Connection& m, const SpanningTree& t) {
  const Graph& g = *m.graph;
  if (static_cast<int>(t.parent.size()) != g.num_vertices()) raise(Errc::TreeMismatch);
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (t.parent[v] < 0 || (v != t.root && t.parent_edge[v] < 0)) raise(Errc::TreeMismatch);
  GaugeField gf = GaugeField::identity(g, m.d);
  for (Vertex v : t.bfs_order) {
    if (v == t.root) continue;
    gf.site[v] = m.matrix(t.parent[v], v) * gf.site[t.parent[v]];
  }
  return {gauge_transform(m, gf), gf};
}

Connection heat_connection_sample(const Connection& m0, double t, int steps, Rng& rng) {
  if (t <= 0.0) return m0;
  Connection out = m0;
  for (auto& e : out.edge) e = heat_sample(Mat::Identity(m0.d, m0.d), t, steps, rng) * e;
  return out;
}

Cplx lie_derivative_exact(const Connection& m, const LoopCollection& c, int edge_id,
                          const Mat& w) {
  const Graph& g = *m.graph;
  auto [u, v] = g.edges()[edge_id];
  // trace of each entry once
  std::vector<Cplx> traces(c.size());
  for (size_t i = 0; i < c.size(); ++i) traces[i] = tau_loop(m, c.loop(i));

  Cplx out = 0.0;
  for (size_t i = 0; i < c.size(); ++i) {
    const Loop& l = c.loop(i);
    if (l.is_trivial()) continue;
    int p = l.length();
    Cplx dtrace = 0.0;
    for (int pos = 0; pos < p; ++pos) {
      Vertex a = l.word()[pos];
      Vertex b = l.word()[(pos + 1) % p];
      if (g.edge_index(a, b) != edge_id) continue;
      bool positive = a == u && b == v;
      // product around the loop from pos, with W inserted at the crossing
      Mat h = positive ? Mat(w * m.edge[edge_id]) : Mat(-(m.edge[edge_id].adjoint() * w));
      for (int j = 1; j < p; ++j) {
        Vertex x = l.word()[(pos + j) % p];
        Vertex y = l.word()[(pos + j + 1) % p];
        h = m.matrix(x, y) * h;
      }
      dtrace += h.trace();
    }
    // product rule over the collection
    Cplx restprod = 1.0;
    for (size_t j = 0; j < c.size(); ++j) {
      int64_t mult = c.multiplicity(j) - (j == i ? 1 : 0);
      for (int64_t r = 0; r < mult; ++r) restprod *= traces[j];
    }
    out += static_cast<double>(c.multiplicity(i)) * dtrace * restprod;
  }
  return out;
}

Cplx casimir_fd_connection(const Connection& m, const LoopCollection& c, const FdStencil& st) {
  return casimir_fd_function(m, [&c](const Connection& mm) { return tau(mm, c); }, st);
}

Cplx casimir_fd_gauge(const GaugeField& gf, const LoopCollection& c, const FdStencil& st) {
  GaugeField work = gf;
  Cplx acc = 0.0;
  Cplx f0 = T_gauge(work, c);
  int copies = 0;
  for (Vertex x = 0; x < gf.graph->num_vertices(); ++x) {
    Mat saved = work.site[x];
    for (size_t l = 0; l < st.basis.size(); ++l) {
      work.site[x] = st.exp_plus[l] * saved;
      acc += T_gauge(work, c);
      work.site[x] = st.exp_minus[l] * saved;
      acc += T_gauge(work, c);
      ++copies;
    }
    work.site[x] = saved;
  }
  return (acc - 2.0 * static_cast<double>(copies) * f0) / (st.eps * st.eps);
}

Cplx evaluate_expansion(const Connection& m, const LoopCollection& c,
                        const GeneratorExpansion& ex) {
  Cplx acc = static_cast<double>(m.d) * static_cast<double>(ex.p_total) * tau(m, c);
  for (const auto& term : ex.terms) acc += term.coeff * tau(m, term.result);
  return -acc;
}

Cplx casimir_rhs_connection(const Connection& m, const LoopCollection& c,
                            const Deformation* deform) {
  GeneratorExpansion ex = generator_expansion(*m.graph, c, deform);
  return evaluate_expansion(m, c, ex);
}

Cplx casimir_rhs_gauge(const GaugeField& gf, const LoopCollection& c) {
  GeneratorExpansion ex = vertex_expansion(*gf.graph, c);
  Cplx acc = static_cast<double>(gf.d) * static_cast<double>(ex.p_total) * T_gauge(gf, c);
  for (const auto& term : ex.terms) acc += term.coeff * T_gauge(gf, term.result);
  return -acc;
}

}  // namespace loopym
