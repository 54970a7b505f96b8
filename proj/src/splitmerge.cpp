#include "loopym/splitmerge.hpp"

#include <algorithm>

namespace loopym {

namespace {

std::vector<Vertex> rotate_to(const std::vector<Vertex>& w, int i) {
  int p = static_cast<int>(w.size());
  std::vector<Vertex> out;
  out.reserve(p);
  for (int j = 0; j < p; ++j) out.push_back(w[(i + j) % p]);
  return out;
}

Loop canonical(std::vector<Vertex> w) {
  return Loop::unsafe_from_canonical(min_rotation(std::move(w)));
}

void require_geodesic(const Loop& l) {
  if (!l.is_geodesic()) raise(Errc::NotGeodesic);
}

// One instance of a crossing or visit inside a collection.
struct Slot {
  size_t entry;
  int64_t instance;
  int pos;
};

std::vector<Slot> crossing_slots(const LoopCollection& c, Vertex x, Vertex y) {
  std::vector<Slot> out;
  for (size_t e = 0; e < c.size(); ++e) {
    auto cr = crossings(c.loop(e), x, y);
    for (int64_t inst = 0; inst < c.multiplicity(e); ++inst)
      for (int pos : cr) out.push_back({e, inst, pos});
  }
  return out;
}

std::vector<Slot> visit_slots(const LoopCollection& c, Vertex x) {
  std::vector<Slot> out;
  for (size_t e = 0; e < c.size(); ++e) {
    const auto& w = c.loop(e).word();
    for (int64_t inst = 0; inst < c.multiplicity(e); ++inst)
      for (int pos = 0; pos < static_cast<int>(w.size()); ++pos)
        if (w[pos] == x) out.push_back({e, inst, pos});
  }
  return out;
}

LoopCollection remove_entry_instance(const LoopCollection& c, size_t entry) {
  LoopCollection out = c;
  out.remove_one(entry);
  return out;
}

// Removes one instance of each entry; for ea == eb the entry must have
// multiplicity >= 2.
LoopCollection remove_two_instances(const LoopCollection& c, size_t ea, size_t eb) {
  LoopCollection out = c;
  if (ea == eb) {
    out.remove_one(ea);
    out.remove_one(ea);
  } else {
    out.remove_one(std::max(ea, eb));
    out.remove_one(std::min(ea, eb));
  }
  return out;
}

}  // namespace

const char* channel_class_name(ChannelClass c) {
  switch (c) {
    case ChannelClass::SplitPos: return "split+";
    case ChannelClass::SplitNeg: return "split-";
    case ChannelClass::MergePos: return "merge+";
    case ChannelClass::MergeNeg: return "merge-";
    case ChannelClass::DMergePos: return "Dmerge+";
    case ChannelClass::DMergeNeg: return "Dmerge-";
  }
  return "?";
}

std::pair<Loop, Loop> split_pos_at(const Loop& gamma, int i1, int i2) {
  const auto& w = gamma.word();
  int p = gamma.length();
  if (i2 < i1) std::swap(i1, i2);
  std::vector<Vertex> a, b;
  for (int j = i1; j < i2; ++j) a.push_back(w[j % p]);
  for (int j = i2; j < i1 + p; ++j) b.push_back(w[j % p]);
  return {canonical(std::move(a)), canonical(std::move(b))};
}

std::pair<Loop, Loop> split_neg_at(const Loop& gamma, int i1, int i2) {
  const auto& w = gamma.word();
  int p = gamma.length();
  int j2 = i2 > i1 ? i2 : i2 + p;
  std::vector<Vertex> a, b;
  for (int j = i1 + 1; j < j2; ++j) a.push_back(w[j % p]);       // bridge y -> y
  for (int j = j2 + 1; j < i1 + p; ++j) b.push_back(w[j % p]);   // bridge x -> x
  return {reduce_word(std::move(a)), reduce_word(std::move(b))};
}

std::pair<Loop, Loop> split_vertex_at(const Loop& gamma, int i1, int i2) {
  return split_pos_at(gamma, i1, i2);
}

Loop merge_pos_at(const Loop& g1, int i1, const Loop& g2, int i2) {
  std::vector<Vertex> w = rotate_to(g1.word(), i1);
  std::vector<Vertex> v = rotate_to(g2.word(), i2);
  w.insert(w.end(), v.begin(), v.end());
  return canonical(std::move(w));
}

Loop merge_vertex_at(const Loop& g1, int i1, const Loop& g2, int i2) {
  return merge_pos_at(g1, i1, g2, i2);
}

Loop merge_neg_at(const Loop& g1, int i1, const Loop& g2, int i2) {
  const auto& w1 = g1.word();
  const auto& w2 = g2.word();
  int p1 = g1.length(), p2 = g2.length();
  std::vector<Vertex> w;
  w.reserve(p1 + p2 - 2);
  for (int j = i1 + 1; j <= i1 + p1; ++j) w.push_back(w1[j % p1]);   // y ... x
  for (int j = i2 + 2; j < i2 + p2; ++j) w.push_back(w2[j % p2]);    // interior of x ... y
  return reduce_word(std::move(w));
}

std::vector<std::pair<Loop, Loop>> split_pos_all(const Graph&, const Loop& gamma,
                                                 OrientedEdge e) {
  require_geodesic(gamma);
  auto cr = crossings(gamma, e.tail, e.head);
  std::vector<std::pair<Loop, Loop>> out;
  for (size_t a = 0; a < cr.size(); ++a)
    for (size_t b = a + 1; b < cr.size(); ++b) out.push_back(split_pos_at(gamma, cr[a], cr[b]));
  return out;
}

std::vector<std::pair<Loop, Loop>> split_neg_all(const Graph&, const Loop& gamma,
                                                 OrientedEdge xy) {
  require_geodesic(gamma);
  auto c1 = crossings(gamma, xy.tail, xy.head);
  auto c2 = crossings(gamma, xy.head, xy.tail);
  std::vector<std::pair<Loop, Loop>> out;
  for (int i1 : c1)
    for (int i2 : c2) out.push_back(split_neg_at(gamma, i1, i2));
  return out;
}

std::vector<Loop> merge_pos_all(const Graph&, const Loop& gamma1, const Loop& gamma2,
                                OrientedEdge e) {
  require_geodesic(gamma1);
  require_geodesic(gamma2);
  auto c1 = crossings(gamma1, e.tail, e.head);
  auto c2 = crossings(gamma2, e.tail, e.head);
  std::vector<Loop> out;
  for (int i1 : c1)
    for (int i2 : c2) out.push_back(merge_pos_at(gamma1, i1, gamma2, i2));
  return out;
}

std::vector<Loop> merge_neg_all(const Graph&, const Loop& gamma1, const Loop& gamma2,
                                OrientedEdge xy) {
  require_geodesic(gamma1);
  require_geodesic(gamma2);
  auto c1 = crossings(gamma1, xy.tail, xy.head);
  auto c2 = crossings(gamma2, xy.head, xy.tail);
  std::vector<Loop> out;
  for (int i1 : c1)
    for (int i2 : c2) out.push_back(merge_neg_at(gamma1, i1, gamma2, i2));
  return out;
}

GeneratorExpansion generator_expansion(const Graph& g, const LoopCollection& c,
                                       const Deformation* deform) {
  if (!c.all_geodesic_or_trivial()) raise(Errc::NotGeodesic);
  GeneratorExpansion ex;
  ex.p_total = c.total_length();

  // within-loop terms
  for (size_t ei = 0; ei < c.size(); ++ei) {
    const Loop& gamma = c.loop(ei);
    if (gamma.is_trivial()) continue;
    double m = static_cast<double>(c.multiplicity(ei));
    LoopCollection rest = remove_entry_instance(c, ei);

    for (int oid = 0; oid < g.num_oriented(); ++oid) {
      OrientedEdge e = g.oriented_edge(oid);
      auto cr = crossings(gamma, e.tail, e.head);
      for (size_t a = 0; a < cr.size(); ++a) {
        for (size_t b = a + 1; b < cr.size(); ++b) {
          auto [l1, l2] = split_pos_at(gamma, cr[a], cr[b]);
          LoopCollection res = rest;
          res.add(l1);
          res.add(l2);
          ex.terms.push_back({ChannelClass::SplitPos, 2.0 * m, std::move(res)});
        }
      }
    }
    for (int e = 0; e < g.num_edges(); ++e) {
      auto [u, v] = g.edges()[e];
      auto c1 = crossings(gamma, u, v);
      auto c2 = crossings(gamma, v, u);
      for (int i1 : c1) {
        for (int i2 : c2) {
          auto [l1, l2] = split_neg_at(gamma, i1, i2);
          LoopCollection res = rest;
          res.add(l1);
          res.add(l2);
          ex.terms.push_back({ChannelClass::SplitNeg, -2.0 * m, std::move(res)});
        }
      }
    }
    if (deform && deform->k != 0.0) {
      double w = deform->k / deform->d;
      const PlaquetteTables& pt = *deform->plaquettes;
      for (int oid = 0; oid < g.num_oriented(); ++oid) {
        OrientedEdge e = g.oriented_edge(oid);
        auto cr = crossings(gamma, e.tail, e.head);
        if (cr.empty()) continue;
        int rev = g.oriented_index(e.head, e.tail);
        for (int i : cr) {
          for (const auto& [pidx, ppos] : pt.containing[oid]) {
            LoopCollection res = rest;
            res.add(merge_pos_at(gamma, i, pt.all[pidx], ppos));
            ex.terms.push_back({ChannelClass::DMergePos, +w * m, std::move(res)});
          }
          for (const auto& [pidx, ppos] : pt.containing[rev]) {
            LoopCollection res = rest;
            res.add(merge_neg_at(gamma, i, pt.all[pidx], ppos));
            ex.terms.push_back({ChannelClass::DMergeNeg, -w * m, std::move(res)});
          }
        }
      }
    }
  }

  // cross-loop terms, unordered entry pairs including identical-loop pairs
  for (size_t ea = 0; ea < c.size(); ++ea) {
    const Loop& ga = c.loop(ea);
    if (ga.is_trivial()) continue;
    for (size_t eb = ea; eb < c.size(); ++eb) {
      const Loop& gb = c.loop(eb);
      if (gb.is_trivial()) continue;
      double pair_mult =
          ea == eb ? 0.5 * static_cast<double>(c.multiplicity(ea)) *
                         static_cast<double>(c.multiplicity(ea) - 1)
                   : static_cast<double>(c.multiplicity(ea)) * static_cast<double>(c.multiplicity(eb));
      if (pair_mult == 0.0) continue;
      LoopCollection rest = remove_two_instances(c, ea, eb);

      for (int oid = 0; oid < g.num_oriented(); ++oid) {
        OrientedEdge e = g.oriented_edge(oid);
        auto c1 = crossings(ga, e.tail, e.head);
        if (c1.empty()) continue;
        auto c2 = crossings(gb, e.tail, e.head);
        for (int i1 : c1) {
          for (int i2 : c2) {
            LoopCollection res = rest;
            res.add(merge_pos_at(ga, i1, gb, i2));
            ex.terms.push_back({ChannelClass::MergePos, 2.0 * pair_mult, std::move(res)});
          }
        }
        auto c2r = crossings(gb, e.head, e.tail);
        for (int i1 : c1) {
          for (int i2 : c2r) {
            LoopCollection res = rest;
            res.add(merge_neg_at(ga, i1, gb, i2));
            ex.terms.push_back({ChannelClass::MergeNeg, -2.0 * pair_mult, std::move(res)});
          }
        }
      }
    }
  }
  return ex;
}

GeneratorExpansion vertex_expansion(const Graph& g, const LoopCollection& c) {
  GeneratorExpansion ex;
  ex.p_total = c.total_length();

  for (size_t ei = 0; ei < c.size(); ++ei) {
    const Loop& gamma = c.loop(ei);
    if (gamma.is_trivial()) continue;
    double m = static_cast<double>(c.multiplicity(ei));
    LoopCollection rest = remove_entry_instance(c, ei);
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
      std::vector<int> vis;
      for (int pos = 0; pos < gamma.length(); ++pos)
        if (gamma.word()[pos] == x) vis.push_back(pos);
      for (size_t a = 0; a < vis.size(); ++a) {
        for (size_t b = a + 1; b < vis.size(); ++b) {
          auto [l1, l2] = split_vertex_at(gamma, vis[a], vis[b]);
          LoopCollection res = rest;
          res.add(l1);
          res.add(l2);
          ex.terms.push_back({ChannelClass::SplitPos, 2.0 * m, std::move(res)});
        }
      }
    }
  }

  for (size_t ea = 0; ea < c.size(); ++ea) {
    const Loop& ga = c.loop(ea);
    if (ga.is_trivial()) continue;
    for (size_t eb = ea; eb < c.size(); ++eb) {
      const Loop& gb = c.loop(eb);
      if (gb.is_trivial()) continue;
      double pair_mult =
          ea == eb ? 0.5 * static_cast<double>(c.multiplicity(ea)) *
                         static_cast<double>(c.multiplicity(ea) - 1)
                   : static_cast<double>(c.multiplicity(ea)) * static_cast<double>(c.multiplicity(eb));
      if (pair_mult == 0.0) continue;
      LoopCollection rest = remove_two_instances(c, ea, eb);
      for (Vertex x = 0; x < g.num_vertices(); ++x) {
        std::vector<int> va, vb;
        for (int pos = 0; pos < ga.length(); ++pos)
          if (ga.word()[pos] == x) va.push_back(pos);
        if (va.empty()) continue;
        for (int pos = 0; pos < gb.length(); ++pos)
          if (gb.word()[pos] == x) vb.push_back(pos);
        for (int i1 : va) {
          for (int i2 : vb) {
            LoopCollection res = rest;
            res.add(merge_vertex_at(ga, i1, gb, i2));
            ex.terms.push_back({ChannelClass::MergePos, 2.0 * pair_mult, std::move(res)});
          }
        }
      }
    }
  }
  return ex;
}

bool is_positive_channel(const Channel& ch) {
  return ch.kind == Channel::Kind::SMplus || ch.kind == Channel::Kind::Dplus;
}

std::vector<Channel> active_channels(const Graph& g, const LoopCollection& c,
                                     const ChainMode& mode) {
  Network n = occupation(g, c);
  std::vector<Channel> out;
  for (int oid = 0; oid < g.num_oriented(); ++oid) {
    OrientedEdge e = g.oriented_edge(oid);
    double N = static_cast<double>(n.raw()[oid]);
    if (N <= 0) continue;
    if (mode.sm_plus) {
      double rate = mode.literal_diagonal ? N * N : N * (N - 1);
      if (rate > 0) out.push_back({Channel::Kind::SMplus, e.tail, e.head, rate});
    }
    if (mode.sm_minus) {
      double Nr = static_cast<double>(n.raw()[oid ^ 1]);
      if (Nr > 0) out.push_back({Channel::Kind::SMminus, e.tail, e.head, N * Nr});
    }
    if (mode.deform && mode.deform->k != 0.0) {
      double w = mode.deform->k / mode.deform->d * 2.0 * (mode.deform->torus_n - 1) * N;
      out.push_back({Channel::Kind::Dplus, e.tail, e.head, w});
      out.push_back({Channel::Kind::Dminus, e.tail, e.head, w});
    }
  }
  return out;
}

double total_rate(const std::vector<Channel>& chans) {
  double r = 0.0;
  for (const auto& ch : chans) r += ch.rate;
  return r;
}

LoopCollection sample_transition(const Graph& g, const LoopCollection& c, const Channel& ch,
                                 const ChainMode& mode, Rng& rng) {
  switch (ch.kind) {
    case Channel::Kind::SMplus: {
      auto slots = crossing_slots(c, ch.a, ch.b);
      size_t t = slots.size();
      if (t == 0 || (!mode.literal_diagonal && t < 2)) raise(Errc::ZeroRateChannel);
      size_t s1, s2;
      if (mode.literal_diagonal) {
        s1 = uniform_below(rng, t);
        s2 = uniform_below(rng, t);
        if (s1 == s2) return c;  // diagonal mass 1/N: no change
      } else {
        s1 = uniform_below(rng, t);
        s2 = uniform_below(rng, t - 1);
        if (s2 >= s1) ++s2;
      }
      const Slot& a = slots[s1];
      const Slot& b = slots[s2];
      if (a.entry == b.entry && a.instance == b.instance) {
        auto [l1, l2] = split_pos_at(c.loop(a.entry), a.pos, b.pos);
        LoopCollection res = remove_entry_instance(c, a.entry);
        res.add(l1);
        res.add(l2);
        return res;
      }
      LoopCollection res = remove_two_instances(c, a.entry, b.entry);
      res.add(merge_pos_at(c.loop(a.entry), a.pos, c.loop(b.entry), b.pos));
      return res;
    }
    case Channel::Kind::SMminus: {
      auto s1 = crossing_slots(c, ch.a, ch.b);
      auto s2 = crossing_slots(c, ch.b, ch.a);
      if (s1.empty() || s2.empty()) raise(Errc::ZeroRateChannel);
      const Slot& a = s1[uniform_below(rng, s1.size())];
      const Slot& b = s2[uniform_below(rng, s2.size())];
      if (a.entry == b.entry && a.instance == b.instance) {
        auto [l1, l2] = split_neg_at(c.loop(a.entry), a.pos, b.pos);
        LoopCollection res = remove_entry_instance(c, a.entry);
        res.add(l1);
        res.add(l2);
        return res;
      }
      LoopCollection res = remove_two_instances(c, a.entry, b.entry);
      res.add(merge_neg_at(c.loop(a.entry), a.pos, c.loop(b.entry), b.pos));
      return res;
    }
    case Channel::Kind::Dplus:
    case Channel::Kind::Dminus: {
      if (!mode.deform) raise(Errc::ZeroRateChannel, "no deformation context");
      const PlaquetteTables& pt = *mode.deform->plaquettes;
      auto slots = crossing_slots(c, ch.a, ch.b);
      if (slots.empty()) raise(Errc::ZeroRateChannel);
      const Slot& s = slots[uniform_below(rng, slots.size())];
      bool pos = ch.kind == Channel::Kind::Dplus;
      int oid = g.oriented_index(ch.a, ch.b);
      const auto& table = pt.containing[pos ? oid : (oid ^ 1)];
      const auto& [pidx, ppos] = table[uniform_below(rng, table.size())];
      LoopCollection res = remove_entry_instance(c, s.entry);
      res.add(pos ? merge_pos_at(c.loop(s.entry), s.pos, pt.all[pidx], ppos)
                  : merge_neg_at(c.loop(s.entry), s.pos, pt.all[pidx], ppos));
      return res;
    }
    case Channel::Kind::VertexQ: {
      auto slots = visit_slots(c, ch.a);
      if (slots.empty()) raise(Errc::ZeroRateChannel);
      size_t s1 = uniform_below(rng, slots.size());
      size_t s2 = uniform_below(rng, slots.size());
      if (s1 == s2) return c;
      const Slot& a = slots[s1];
      const Slot& b = slots[s2];
      if (a.entry == b.entry && a.instance == b.instance) {
        auto [l1, l2] = split_vertex_at(c.loop(a.entry), a.pos, b.pos);
        LoopCollection res = remove_entry_instance(c, a.entry);
        res.add(l1);
        res.add(l2);
        return res;
      }
      LoopCollection res = remove_two_instances(c, a.entry, b.entry);
      res.add(merge_vertex_at(c.loop(a.entry), a.pos, c.loop(b.entry), b.pos));
      return res;
    }
  }
  raise(Errc::ZeroRateChannel, "unknown channel");
}

ChainPath simulate_chain(const Graph& g, const LoopCollection& c0, double t,
                         const ChainMode& mode, Rng& rng) {
  ChainPath path;
  path.states.push_back(c0);
  double now = 0.0;
  while (true) {
    const LoopCollection& c = path.states.back();
    auto chans = active_channels(g, c, mode);
    double R = total_rate(chans);
    if (R <= 0.0) break;
    double dt = exponential(rng, R);
    if (now + dt > t) break;
    now += dt;
    double u = uniform01(rng) * R;
    size_t pick = 0;
    for (; pick + 1 < chans.size(); ++pick) {
      u -= chans[pick].rate;
      if (u <= 0.0) break;
    }
    LoopCollection next = sample_transition(g, c, chans[pick], mode, rng);
    if (is_positive_channel(chans[pick])) ++path.m_plus;
    path.jumps.push_back({now, chans[pick]});
    path.states.push_back(std::move(next));
  }
  return path;
}

}  // namespace loopym
