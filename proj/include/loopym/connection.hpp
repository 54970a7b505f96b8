#pragma once

#include "loopym/splitmerge.hpp"
#include "loopym/unitary.hpp"

namespace loopym {

// U(d) assignment per unoriented edge, stored for the positive direction
// (tail < head); the reverse direction is the conjugate transpose, computed on
// demand so the two directions cannot drift apart.
struct Connection {
  const Graph* graph = nullptr;
  int d = 0;
  std::vector<Mat> edge;  // indexed by edge id

  Mat matrix(Vertex x, Vertex y) const;  // raises NotAnEdge

  static Connection trivial(const Graph& g, int d);
  static Connection haar(const Graph& g, int d, Rng& rng);
};

struct GaugeField {
  const Graph* graph = nullptr;
  int d = 0;
  std::vector<Mat> site;  // per vertex

  static GaugeField identity(const Graph& g, int d);
  static GaugeField haar(const Graph& g, int d, Rng& rng);
};

// Left-accumulated product along the canonical representative:
//   h = m(xi_{p-1}, xi_p) ... m(xi_0, xi_1);   trivial loop -> identity.
Mat holonomy(const Connection& m, const Loop& l);

// Tr of the holonomy; the trivial loop gives d.
Cplx tau_loop(const Connection& m, const Loop& l);

// Product of holonomy traces with multiplicity; empty collection -> 1.
Cplx tau(const Connection& m, const LoopCollection& c);

// Product over loops of Tr(g(xi_{p-1}) ... g(xi_0)).
Cplx T_gauge(const GaugeField& gf, const LoopCollection& c);
Cplx T_gauge_loop(const GaugeField& gf, const Loop& l);

// m'(x,y) = g(y)^{-1} m(x,y) g(x); preserves every tau exactly.
Connection gauge_transform(const Connection& m, const GaugeField& gf);

// Equivalent connection with identity on all tree edges, plus the gauge field
// used (site value = path-ordered product from the root).
std::pair<Connection, GaugeField> tree_gauge_fix(const Connection& m, const SpanningTree& t);

// Independent heat-kernel left increments per edge in the stored orientation.
Connection heat_connection_sample(const Connection& m0, double t, int steps, Rng& rng);

// Exact first Lie derivative of tau in the group copy at the given edge,
// in the direction W (antihermitian): sum over crossings with W inserted.
Cplx lie_derivative_exact(const Connection& m, const LoopCollection& c, int edge_id,
                          const Mat& w);

// Finite-difference Casimir acting on tau as a function of the connection:
// sum over edge copies. The LHS oracle of the intertwining identity.
Cplx casimir_fd_connection(const Connection& m, const LoopCollection& c, const FdStencil& st);

// Same for T_gauge as a function of the gauge field (sum over vertex copies).
Cplx casimir_fd_gauge(const GaugeField& gf, const LoopCollection& c, const FdStencil& st);

// Generic FD forms over a connection for arbitrary observables f(m).
template <class F>
Cplx casimir_fd_function(const Connection& m, F&& f, const FdStencil& st) {
  Connection work = m;
  Cplx acc = 0.0;
  Cplx f0 = f(work);
  int copies = 0;
  for (int e = 0; e < m.graph->num_edges(); ++e) {
    Mat saved = work.edge[e];
    for (size_t l = 0; l < st.basis.size(); ++l) {
      work.edge[e] = st.exp_plus[l] * saved;
      acc += f(work);
      work.edge[e] = st.exp_minus[l] * saved;
      acc += f(work);
      ++copies;
    }
    work.edge[e] = saved;
  }
  return (acc - 2.0 * static_cast<double>(copies) * f0) / (st.eps * st.eps);
}

// Gamma(f1, f2) over the connection: sum over edge copies of products of
// central first differences.
template <class F1, class F2>
Cplx gamma_fd_connection(const Connection& m, F1&& f1, F2&& f2, const FdStencil& st) {
  Connection work = m;
  Cplx acc = 0.0;
  for (int e = 0; e < m.graph->num_edges(); ++e) {
    Mat saved = work.edge[e];
    for (size_t l = 0; l < st.basis.size(); ++l) {
      work.edge[e] = st.exp_plus[l] * saved;
      Cplx a1 = f1(work), a2 = f2(work);
      work.edge[e] = st.exp_minus[l] * saved;
      acc += (a1 - f1(work)) * (a2 - f2(work));
    }
    work.edge[e] = saved;
  }
  return acc / (4.0 * st.eps * st.eps);
}

// Split/merge evaluation of A tau (the RHS of the intertwining identity):
//   A tau(c) = -[d p_total tau(c) + sum coeff tau(term)];
// with a deformation this is A^{(C,k)} tau. Geodesic collections only.
Cplx casimir_rhs_connection(const Connection& m, const LoopCollection& c,
                            const Deformation* deform = nullptr);
Cplx evaluate_expansion(const Connection& m, const LoopCollection& c,
                        const GeneratorExpansion& ex);

// Vertex analogue: A T(c) = -[d S T(c) + 2 sum T(term)] over discrete loops.
Cplx casimir_rhs_gauge(const GaugeField& gf, const LoopCollection& c);

}  // namespace loopym
