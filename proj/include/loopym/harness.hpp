#pragma once

#include <string>
#include <vector>

#include "loopym/json_io.hpp"
#include "loopym/measures.hpp"

namespace loopym {

struct SuiteConfig {
  std::string suite;
  std::string graph_kind;  // "" = suite default; torus | cycle | complete | file
  int L = 3, n = 2, m = 3;
  std::string graph_file;
  std::vector<int> ds;      // empty = suite default
  std::vector<double> ks;   // empty = suite default
  double t = -1.0;          // < 0 = suite default
  int64_t trials = -1;      // < 0 = suite default
  double eps = 1e-3;
  uint64_t seed = 1;
  int threads = 0;  // 0 = env / hardware
  std::string out_path;
};

struct TestLine {
  std::string name;
  Cplx estimate = 0.0;
  double se = 0.0;
  Cplx target = 0.0;
  double tol = 0.0;
  bool pass = false;
  uint64_t seed = 0;
  double wall_ms = 0.0;
};

struct TestReport {
  std::string suite;
  SuiteConfig config;
  std::vector<TestLine> tests;
  bool pass = false;
};

// Suite names: sonia, intertwine, gauge-intertwine, deformed-intertwine,
// haar-sd, heat-fk, fk-fokker-planck, ym-sd, combinatorial, adjudicate.
const std::vector<std::string>& suite_names();

TestReport run_suite(const SuiteConfig& cfg);

Json report_to_json(const TestReport& report);
void print_report(const TestReport& report);

// --- seeded case generators (shared by suites and property tests) -----------

// Uniform random closed walk from a random start (backtracking allowed);
// first return to the start, capped length.
std::vector<Vertex> random_closed_walk(const Graph& g, Rng& rng, int max_len);

// Nontrivial geodesic loop obtained by cyclic reduction of a random walk.
Loop random_geodesic_loop(const Graph& g, Rng& rng, int max_len);

// <= max_loops entries (an entry may carry multiplicity 2), total length
// <= max_total; geodesic when `geodesic`, raw closed walks otherwise.
LoopCollection random_collection(const Graph& g, Rng& rng, bool geodesic, int max_loops = 4,
                                 int max_total = 24);

// Named fixed collections on the verification torus.
struct TorusFixtures {
  Graph graph;
  PlaquetteTables plaq;
  LoopCollection plaquette;
  LoopCollection plaquette_double;  // double cover of one plaquette
  LoopCollection winding_triangle;  // straight length-L loop around axis 0
  LoopCollection triangle_pair;     // winding triangle plus its reverse
  LoopCollection hexagon;           // length-6 diagonal staircase

  static TorusFixtures make(int L, int n);
};

}  // namespace loopym
