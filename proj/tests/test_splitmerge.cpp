#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "loopym/splitmerge.hpp"

using namespace loopym;

namespace {

Loop L(const Graph& g, std::vector<Vertex> w) { return Loop::from_word(g, std::move(w)); }

std::vector<Vertex> random_closed_walk(const Graph& g, Rng& rng, int max_len) {
  while (true) {
    Vertex start = static_cast<Vertex>(uniform_below(rng, g.num_vertices()));
    std::vector<Vertex> w = {start};
    for (int s = 0; s < max_len; ++s) {
      const auto& nb = g.neighbors(w.back());
      Vertex next = nb[uniform_below(rng, nb.size())];
      if (next == start && w.size() >= 2) return w;
      w.push_back(next);
    }
  }
}

Loop random_geodesic(const Graph& g, Rng& rng, int max_len) {
  while (true) {
    Loop l = reduce(g, {random_closed_walk(g, rng, max_len)});
    if (!l.is_trivial() && l.length() <= max_len) return l;
  }
}

}  // namespace

TEST_CASE("split_pos_all examples") {
  Graph tri = Graph::cycle(3);
  Graph k4 = Graph::complete(4);
  Loop t = L(tri, {0, 1, 2});
  CHECK(split_pos_all(tri, t, {0, 1}).empty());  // single crossing

  Loop dc = L(tri, {0, 1, 2, 0, 1, 2});
  auto pairs = split_pos_all(tri, dc, {0, 1});
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].first == t);
  CHECK(pairs[0].second == t);

  // figure-eight (a,b,c,a,b,d,a) at (a,b) -> {(a,b,c), (a,b,d)}
  Loop f8 = L(k4, {0, 1, 2, 0, 1, 3});
  auto p2 = split_pos_all(k4, f8, {0, 1});
  REQUIRE(p2.size() == 1);
  Loop abc = L(k4, {0, 1, 2});
  Loop abd = L(k4, {0, 1, 3});
  CHECK(((p2[0].first == abc && p2[0].second == abd) ||
         (p2[0].first == abd && p2[0].second == abc)));

  CHECK_THROWS_AS(split_pos_all(tri, L(tri, {0, 1, 0, 2}), {0, 1}), Error);
}

TEST_CASE("split_neg_all examples") {
  Graph tri = Graph::cycle(3);
  Graph k4 = Graph::complete(4);
  Loop t = L(tri, {0, 1, 2});
  CHECK(split_neg_all(tri, t, {0, 1}).empty());  // no (b,a) crossing

  // gamma = (a,b,c,d,b,a,c,d,a) wait-free example from the contract:
  // at (a,b)/(b,a) the two bridges are (b,c,d,b) and (a,c,d,a)
  Loop gam = L(k4, {0, 1, 2, 3, 1, 0, 2, 3});
  REQUIRE(gam.is_geodesic());
  auto pairs = split_neg_all(k4, gam, {0, 1});
  REQUIRE(pairs.size() == 1);
  Loop bcd = L(k4, {1, 2, 3});
  Loop acd = L(k4, {0, 2, 3});
  CHECK(((pairs[0].first == bcd && pairs[0].second == acd) ||
         (pairs[0].first == acd && pairs[0].second == bcd)));
}

TEST_CASE("merge_pos_all examples") {
  Graph tri = Graph::cycle(3);
  Graph k4 = Graph::complete(4);
  Loop t = L(tri, {0, 1, 2});
  auto m1 = merge_pos_all(tri, t, t, {0, 1});
  REQUIRE(m1.size() == 1);
  CHECK(m1[0] == L(tri, {0, 1, 2, 0, 1, 2}));

  Loop abc = L(k4, {0, 1, 2});
  Loop abd = L(k4, {0, 1, 3});
  auto m2 = merge_pos_all(k4, abc, abd, {0, 1});
  REQUIRE(m2.size() == 1);
  CHECK(m2[0] == L(k4, {0, 1, 2, 0, 1, 3}));

  CHECK(merge_pos_all(tri, t, t, {1, 0}).empty());  // no common (b,a) crossing

  // multiset symmetry
  auto ma = merge_pos_all(k4, abc, abd, {0, 1});
  auto mb = merge_pos_all(k4, abd, abc, {0, 1});
  REQUIRE(ma.size() == mb.size());
  CHECK(ma[0] == mb[0]);
}

TEST_CASE("merge_neg_all examples") {
  Graph tri = Graph::cycle(3);
  Graph k4 = Graph::complete(4);
  Loop t = L(tri, {0, 1, 2});
  auto m1 = merge_neg_all(tri, t, t.reversed(), {0, 1});
  REQUIRE(m1.size() == 1);
  CHECK(m1[0].is_trivial());  // full cancellation

  Loop abc = L(k4, {0, 1, 2});
  Loop bad = L(k4, {1, 0, 3});
  auto m2 = merge_neg_all(k4, abc, bad, {0, 1});
  REQUIRE(m2.size() == 1);
  CHECK(m2[0] == L(k4, {1, 2, 0, 3}));
  CHECK(m2[0].length() == 4);

  Loop cd_only = L(k4, {2, 3, 0});
  CHECK(merge_neg_all(k4, abc, cd_only, {0, 1}).empty());
}

TEST_CASE("positive outputs stay geodesic and conserve occupation") {
  for (const Graph& g : {Graph::complete(4), Graph::torus(3, 2)}) {
    Rng rng = make_rng(17 + g.num_vertices());
    for (int it = 0; it < 1000; ++it) {
      Loop a = random_geodesic(g, rng, 20);
      Loop b = random_geodesic(g, rng, 20);
      Network na = occupation(g, a), nb = occupation(g, b);
      for (int oid = 0; oid < g.num_oriented(); ++oid) {
        OrientedEdge e = g.oriented_edge(oid);
        for (const auto& [l1, l2] : split_pos_all(g, a, e)) {
          CHECK(l1.is_geodesic());
          CHECK(l2.is_geodesic());
          Network n1 = occupation(g, l1);
          Network n2 = occupation(g, l2);
          bool ok = true;
          for (int k = 0; k < g.num_oriented(); ++k)
            ok = ok && n1.raw()[k] + n2.raw()[k] == na.raw()[k];
          CHECK(ok);
        }
        for (const Loop& ml : merge_pos_all(g, a, b, e)) {
          CHECK(ml.is_geodesic());
          Network nm = occupation(g, ml);
          bool ok = true;
          for (int k = 0; k < g.num_oriented(); ++k)
            ok = ok && nm.raw()[k] == na.raw()[k] + nb.raw()[k];
          CHECK(ok);
        }
      }
    }
  }
}

TEST_CASE("negative outputs conserve per-edge crossing differences") {
  for (const Graph& g : {Graph::complete(4), Graph::torus(3, 2)}) {
    Rng rng = make_rng(23 + g.num_vertices());
    for (int it = 0; it < 600; ++it) {
      Loop a = random_geodesic(g, rng, 20);
      Loop b = random_geodesic(g, rng, 20);
      Network na = occupation(g, a), nb = occupation(g, b);
      for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.edges()[e];
        for (const auto& [l1, l2] : split_neg_all(g, a, {u, v})) {
          Network n1 = occupation(g, l1), n2 = occupation(g, l2);
          for (int k = 0; k < g.num_edges(); ++k) {
            auto [x, y] = g.edges()[k];
            int64_t before = na.at(x, y) - na.at(y, x);
            int64_t after = n1.at(x, y) - n1.at(y, x) + n2.at(x, y) - n2.at(y, x);
            CHECK(before == after);
          }
        }
        for (const Loop& ml : merge_neg_all(g, a, b, {u, v})) {
          Network nm = occupation(g, ml);
          for (int k = 0; k < g.num_edges(); ++k) {
            auto [x, y] = g.edges()[k];
            int64_t before = na.at(x, y) - na.at(y, x) + nb.at(x, y) - nb.at(y, x);
            CHECK(before == nm.at(x, y) - nm.at(y, x));
          }
        }
      }
    }
  }
}

TEST_CASE("generator expansion: single circuit has no terms") {
  Graph tri = Graph::cycle(3);
  LoopCollection c({L(tri, {0, 1, 2})});
  auto ex = generator_expansion(tri, c);
  CHECK(ex.p_total == 3);
  CHECK(ex.terms.empty());
}

TEST_CASE("generator expansion: triangle and reversed triangle") {
  Graph tri = Graph::cycle(3);
  Loop t = L(tri, {0, 1, 2});
  LoopCollection c({t, t.reversed()});
  auto ex = generator_expansion(tri, c);
  CHECK(ex.p_total == 6);
  REQUIRE(ex.terms.size() == 3);
  for (const auto& term : ex.terms) {
    CHECK(term.cls == ChannelClass::MergeNeg);
    CHECK(term.coeff == -2.0);
    REQUIRE(term.result.size() == 1);
    CHECK(term.result.loop(0).is_trivial());
  }
}

TEST_CASE("generator expansion: double cover splits") {
  Graph tri = Graph::cycle(3);
  Loop dc = L(tri, {0, 1, 2, 0, 1, 2});
  LoopCollection c({dc});
  auto ex = generator_expansion(tri, c);
  CHECK(ex.p_total == 6);
  REQUIRE(ex.terms.size() == 3);
  Loop t = L(tri, {0, 1, 2});
  for (const auto& term : ex.terms) {
    CHECK(term.cls == ChannelClass::SplitPos);
    CHECK(term.coeff == 2.0);
    REQUIRE(term.result.size() == 1);
    CHECK(term.result.loop(0) == t);
    CHECK(term.result.multiplicity(0) == 2);
  }
}

TEST_CASE("generator expansion: multiplicity-2 entry produces self-pair merges") {
  Graph tri = Graph::cycle(3);
  Loop t = L(tri, {0, 1, 2});
  LoopCollection c;
  c.add(t, 2);
  auto ex = generator_expansion(tri, c);
  CHECK(ex.p_total == 6);
  // one merge+ per oriented crossing pair on each of the 3 traversed edges
  REQUIRE(ex.terms.size() == 3);
  Loop dc = L(tri, {0, 1, 2, 0, 1, 2});
  for (const auto& term : ex.terms) {
    CHECK(term.cls == ChannelClass::MergePos);
    CHECK(term.coeff == 2.0);  // 2 * m(m-1)/2 with m = 2
    REQUIRE(term.result.size() == 1);
    CHECK(term.result.loop(0) == dc);
  }
}

TEST_CASE("deformed expansion counts plaquette merges") {
  Graph g = Graph::torus(3, 2);
  PlaquetteTables pt(g);
  Deformation deform{0.5, 2, &pt, 2};
  Loop plq = pt.all[0];
  LoopCollection c({plq});
  auto ex = generator_expansion(g, c, &deform);
  CHECK(ex.p_total == 4);
  int dpos = 0, dneg = 0;
  for (const auto& term : ex.terms) {
    if (term.cls == ChannelClass::DMergePos) {
      CHECK(term.coeff == doctest::Approx(0.25));
      ++dpos;
    } else if (term.cls == ChannelClass::DMergeNeg) {
      CHECK(term.coeff == doctest::Approx(-0.25));
      ++dneg;
    } else {
      CHECK(false);
    }
  }
  // 4 crossings x 2(n-1) plaquettes per direction
  CHECK(dpos == 8);
  CHECK(dneg == 8);
  // D+ outputs are length 7+1: 4+4 concatenations stay geodesic, length 8
  for (const auto& term : ex.terms)
    if (term.cls == ChannelClass::DMergePos) {
      REQUIRE(term.result.size() == 1);
      CHECK(term.result.loop(0).length() == 8);
      CHECK(term.result.loop(0).is_geodesic());
    }
}

TEST_CASE("sample_transition basics") {
  Graph g = Graph::torus(3, 2);
  PlaquetteTables pt(g);
  Rng rng = make_rng(99);
  ChainMode literal;
  literal.literal_diagonal = true;

  // plaquette under SMplus: single crossing, indices always coincide
  Loop plq = pt.all[0];
  LoopCollection c({plq});
  OrientedEdge e{plq.word()[0], plq.word()[1]};
  Channel ch{Channel::Kind::SMplus, e.tail, e.head, 1.0};
  for (int i = 0; i < 20; ++i) CHECK(sample_transition(g, c, ch, literal, rng) == c);

  // triangle + reversed triangle under SMminus is deterministic -> {trivial}
  Graph tri = Graph::cycle(3);
  Loop t = Loop::from_word(tri, {0, 1, 2});
  LoopCollection tc({t, t.reversed()});
  Channel neg{Channel::Kind::SMminus, 0, 1, 1.0};
  ChainMode plain;
  LoopCollection after = sample_transition(tri, tc, neg, plain, rng);
  REQUIRE(after.size() == 1);
  CHECK(after.loop(0).is_trivial());

  // triangle winding loop under Dplus: merged with one of 2(n-1) plaquettes, length 7
  Loop wind = Loop::from_names(g, {"0,0", "1,0", "2,0"});
  LoopCollection wc({wind});
  ChainMode smd;
  smd.deform = Deformation{1.0, 2, &pt, 2};
  OrientedEdge we{wind.word()[0], wind.word()[1]};
  Channel dp{Channel::Kind::Dplus, we.tail, we.head, 1.0};
  for (int i = 0; i < 10; ++i) {
    LoopCollection merged = sample_transition(g, wc, dp, smd, rng);
    REQUIRE(merged.size() == 1);
    CHECK(merged.loop(0).length() == 7);
    CHECK(merged.loop(0).is_geodesic());
  }

  // zero-rate channel
  Channel dead{Channel::Kind::SMminus, 0, 3, 1.0};
  CHECK_THROWS_AS(sample_transition(g, wc, dead, plain, rng), Error);
}

TEST_CASE("simulate_chain: plaquette jump count is Poisson(V+ t) in literal mode") {
  Graph g = Graph::torus(3, 2);
  PlaquetteTables pt(g);
  LoopCollection c({pt.all[0]});
  ChainMode mode;
  mode.literal_diagonal = true;
  mode.sm_minus = true;
  double t = 1.0;
  int n = 10000;
  double mean_jumps = 0.0;
  Rng rng = make_rng(7);
  for (int i = 0; i < n; ++i) {
    ChainPath path = simulate_chain(g, c, t, mode, rng);
    CHECK(path.final_state() == c);  // the state never changes
    CHECK(path.m_plus == static_cast<int64_t>(path.jumps.size()));
    mean_jumps += static_cast<double>(path.jumps.size());
  }
  mean_jumps /= n;
  double target = 4.0 * t;  // V+ = 4
  double se = std::sqrt(4.0 * t / n);
  CHECK(std::abs(mean_jumps - target) <= 4 * se);
}

TEST_CASE("simulate_chain: trivial collection is absorbing") {
  Graph g = Graph::torus(3, 2);
  LoopCollection c({Loop::trivial()});
  ChainMode mode;
  Rng rng = make_rng(8);
  ChainPath path = simulate_chain(g, c, 5.0, mode, rng);
  CHECK(path.jumps.empty());
}

TEST_CASE("simulate_chain: triangle pair absorbs at trivial via SMminus") {
  Graph tri = Graph::cycle(3);
  Loop t = Loop::from_word(tri, {0, 1, 2});
  LoopCollection c({t, t.reversed()});
  ChainMode mode;
  mode.literal_diagonal = true;
  // first-jump rate V+ + V- = 12
  Rng rng = make_rng(9);
  int n = 8000;
  double mean_first = 0.0;
  int absorbed = 0;
  for (int i = 0; i < n; ++i) {
    ChainPath path = simulate_chain(tri, c, 10.0, mode, rng);
    REQUIRE(!path.jumps.empty());
    mean_first += path.jumps.front().time;
    if (path.final_state().only_trivial()) ++absorbed;
  }
  mean_first /= n;
  CHECK(std::abs(mean_first - 1.0 / 12.0) <= 4.0 / (12.0 * std::sqrt(static_cast<double>(n))));
  CHECK(absorbed == n);  // any SMminus firing absorbs; SMplus leaves state unchanged
}

TEST_CASE("winding vector invariant under all channels") {
  Graph g = Graph::torus(3, 2);
  PlaquetteTables pt(g);
  Rng rng = make_rng(31);
  ChainMode mode;
  mode.literal_diagonal = true;
  mode.deform = Deformation{0.7, 2, &pt, 2};
  for (int it = 0; it < 300; ++it) {
    LoopCollection c;
    int nl = 1 + static_cast<int>(uniform_below(rng, 3));
    for (int i = 0; i < nl; ++i) c.add(random_geodesic(g, rng, 12));
    auto w0 = winding_vector(g, c);
    ChainPath path = simulate_chain(g, c, 0.05, mode, rng);
    CHECK(winding_vector(g, path.final_state()) == w0);
  }
}
