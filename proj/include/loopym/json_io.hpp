#pragma once

#include <json.hpp>

#include "loopym/connection.hpp"

namespace loopym {

using Json = nlohmann::json;

// {"kind":"torus","L":3,"n":2} | {"kind":"cycle","m":3} | {"kind":"complete","m":4}
// | {"kind":"explicit","vertices":[...],"edges":[["a","b"],...]}
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

// {"loops":[{"vertices":["a","b","c","a"],"multiplicity":1}, ...]};
// torus vertices may be integer coordinate arrays.
Json loops_to_json(const Graph& g, const LoopCollection& c);
LoopCollection loops_from_json(const Graph& g, const Json& j);

// {"d":2,"edges":[{"edge":["a","b"],"matrix":[[re,im] x d^2 row-major]}, ...]}
Json connection_to_json(const Connection& m);
Connection connection_from_json(const Graph& g, const Json& j);  // validates unitarity 1e-8

Json chain_path_to_json(const ChainPath& path);

}  // namespace loopym
