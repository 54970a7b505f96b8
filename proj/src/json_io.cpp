#include "loopym/json_io.hpp"

namespace loopym {

Json graph_to_json(const Graph& g) {
  switch (g.kind()) {
    case Graph::Kind::Torus:
      return Json{{"kind", "torus"}, {"L", g.torus_L()}, {"n", g.torus_n()}};
    case Graph::Kind::Cycle:
      return Json{{"kind", "cycle"}, {"m", g.num_vertices()}};
    case Graph::Kind::Complete:
      return Json{{"kind", "complete"}, {"m", g.num_vertices()}};
    case Graph::Kind::Explicit: {
      Json verts = Json::array();
      for (Vertex v = 0; v < g.num_vertices(); ++v) verts.push_back(g.name(v));
      Json edges = Json::array();
      for (const auto& [u, v] : g.edges()) edges.push_back(Json::array({g.name(u), g.name(v)}));
      return Json{{"kind", "explicit"}, {"vertices", verts}, {"edges", edges}};
    }
  }
  raise(Errc::ConfigError, "unknown graph kind");
}

Graph graph_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "torus") return Graph::torus(j.at("L").get<int>(), j.at("n").get<int>());
  if (kind == "cycle") return Graph::cycle(j.at("m").get<int>());
  if (kind == "complete") return Graph::complete(j.at("m").get<int>());
  if (kind == "explicit") {
    std::vector<std::string> names;
    for (const auto& v : j.at("vertices")) names.push_back(v.get<std::string>());
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : j.at("edges"))
      edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    return Graph::explicit_graph(std::move(names), edges);
  }
  raise(Errc::ConfigError, "unknown graph kind " + kind);
}

namespace {

Vertex vertex_from_json(const Graph& g, const Json& v) {
  if (v.is_array()) {
    if (!g.is_torus()) raise(Errc::ConfigError, "coordinate vertices need a torus graph");
    std::vector<int> coords;
    for (const auto& c : v) coords.push_back(c.get<int>());
    if (static_cast<int>(coords.size()) != g.torus_n())
      raise(Errc::ConfigError, "coordinate arity mismatch");
    return g.torus_vertex(coords);
  }
  if (v.is_number_integer()) {
    int idx = v.get<int>();
    if (idx < 0 || idx >= g.num_vertices()) raise(Errc::UnknownVertex, std::to_string(idx));
    return idx;
  }
  return g.vertex_by_name(v.get<std::string>());
}

Json vertex_to_json(const Graph& g, Vertex v) {
  if (g.is_torus()) {
    Json arr = Json::array();
    for (int c : g.torus_coords(v)) arr.push_back(c);
    return arr;
  }
  return g.name(v);
}

}  // namespace

Json loops_to_json(const Graph& g, const LoopCollection& c) {
  Json loops = Json::array();
  for (const auto& [l, m] : c.entries()) {
    Json verts = Json::array();
    for (int i = 0; i < l.length(); ++i) verts.push_back(vertex_to_json(g, l.word()[i]));
    if (!l.is_trivial()) verts.push_back(vertex_to_json(g, l.word()[0]));  // closed form
    loops.push_back(Json{{"vertices", verts}, {"multiplicity", m}});
  }
  return Json{{"loops", loops}};
}

LoopCollection loops_from_json(const Graph& g, const Json& j) {
  LoopCollection c;
  for (const auto& entry : j.at("loops")) {
    std::vector<Vertex> word;
    for (const auto& v : entry.at("vertices")) word.push_back(vertex_from_json(g, v));
    int64_t mult = entry.value("multiplicity", 1);
    c.add(Loop::from_word(g, std::move(word)), mult);
  }
  return c;
}

Json connection_to_json(const Connection& m) {
  const Graph& g = *m.graph;
  Json edges = Json::array();
  for (int e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edges()[e];
    Json mat = Json::array();
    for (int r = 0; r < m.d; ++r)
      for (int cc = 0; cc < m.d; ++cc)
        mat.push_back(Json::array({m.edge[e](r, cc).real(), m.edge[e](r, cc).imag()}));
    edges.push_back(Json{{"edge", Json::array({vertex_to_json(g, u), vertex_to_json(g, v)})},
                         {"matrix", mat}});
  }
  return Json{{"d", m.d}, {"edges", edges}};
}

Connection connection_from_json(const Graph& g, const Json& j) {
  int d = j.at("d").get<int>();
  Connection m = Connection::trivial(g, d);
  std::vector<char> seen(g.num_edges(), 0);
  for (const auto& entry : j.at("edges")) {
    Vertex u = vertex_from_json(g, entry.at("edge").at(0));
    Vertex v = vertex_from_json(g, entry.at("edge").at(1));
    int e = g.edge_index(u, v);
    if (e < 0) raise(Errc::NotAnEdge);
    const Json& mat = entry.at("matrix");
    if (static_cast<int>(mat.size()) != d * d) raise(Errc::ConfigError, "matrix size mismatch");
    Mat u_mat(d, d);
    int idx = 0;
    for (int r = 0; r < d; ++r)
      for (int cc = 0; cc < d; ++cc, ++idx)
        u_mat(r, cc) = Cplx(mat.at(idx).at(0).get<double>(), mat.at(idx).at(1).get<double>());
    if (u > v) u_mat = u_mat.adjoint().eval();  // stored orientation is tail < head
    if (unitarity_error(u_mat) > 1e-8) raise(Errc::ConfigError, "matrix is not unitary");
    m.edge[e] = u_mat;
    seen[e] = 1;
  }
  for (int e = 0; e < g.num_edges(); ++e)
    if (!seen[e]) raise(Errc::ConfigError, "missing edge matrix");
  return m;
}

Json chain_path_to_json(const ChainPath& path) {
  Json jumps = Json::array();
  for (size_t i = 0; i < path.jumps.size(); ++i) {
    const auto& jmp = path.jumps[i];
    const char* kind = "";
    switch (jmp.channel.kind) {
      case Channel::Kind::SMplus: kind = "SM+"; break;
      case Channel::Kind::SMminus: kind = "SM-"; break;
      case Channel::Kind::Dplus: kind = "D+"; break;
      case Channel::Kind::Dminus: kind = "D-"; break;
      case Channel::Kind::VertexQ: kind = "Q"; break;
    }
    jumps.push_back(Json{{"t", jmp.time},
                         {"channel", kind},
                         {"state_size", path.states[i + 1].total_instances()}});
  }
  return Json{{"jumps", jumps}, {"m_plus", path.m_plus}};
}

}  // namespace loopym
