#pragma once

#include <optional>
#include <vector>

#include "loopym/network.hpp"
#include "loopym/plaquette.hpp"
#include "loopym/rng.hpp"

namespace loopym {

// --- elementary split / merge moves -----------------------------------------
//
// Positive moves act at two crossings of the same oriented edge and preserve
// geodesy without reduction; negative moves cancel an (x,y) against a (y,x)
// crossing and the outputs are cyclically reduced (possibly trivial).

// Unordered pairs {gamma1, gamma2}, one per unordered pair of distinct
// crossings of e in gamma.
std::vector<std::pair<Loop, Loop>> split_pos_all(const Graph& g, const Loop& gamma,
                                                 OrientedEdge e);

// One output pair per (i1 crossing (x,y), i2 crossing (y,x)); outputs reduced.
std::vector<std::pair<Loop, Loop>> split_neg_all(const Graph& g, const Loop& gamma,
                                                 OrientedEdge xy);

// One output per crossing pair (i1 in gamma1, i2 in gamma2) of e.
std::vector<Loop> merge_pos_all(const Graph& g, const Loop& gamma1, const Loop& gamma2,
                                OrientedEdge e);

// One output per (i1 crossing (x,y) in gamma1, i2 crossing (y,x) in gamma2);
// the two crossings are cancelled and the result reduced.
std::vector<Loop> merge_neg_all(const Graph& g, const Loop& gamma1, const Loop& gamma2,
                                OrientedEdge xy);

// Single-move variants used by the samplers (indices are crossing positions).
Loop merge_pos_at(const Loop& g1, int i1, const Loop& g2, int i2);
Loop merge_neg_at(const Loop& g1, int i1, const Loop& g2, int i2);
std::pair<Loop, Loop> split_pos_at(const Loop& gamma, int i1, int i2);
std::pair<Loop, Loop> split_neg_at(const Loop& gamma, int i1, int i2);
std::pair<Loop, Loop> split_vertex_at(const Loop& gamma, int i1, int i2);
Loop merge_vertex_at(const Loop& g1, int i1, const Loop& g2, int i2);

// --- generator expansion -----------------------------------------------------

struct Deformation {
  double k = 0.0;
  int d = 1;
  const PlaquetteTables* plaquettes = nullptr;  // torus census
  int torus_n = 2;
};

enum class ChannelClass { SplitPos, SplitNeg, MergePos, MergeNeg, DMergePos, DMergeNeg };

const char* channel_class_name(ChannelClass c);

struct ExpansionTerm {
  ChannelClass cls;
  double coeff;  // +-2 per split/merge output, +-k/d per plaquette merge
  LoopCollection result;
};

// Split/merge expansion of -A tau over a geodesic collection:
//   -A tau(c) = d * p_total * tau(c) + sum_terms coeff * tau(term)
// with coefficients +2 split+, -2 split-, +2 merge+, -2 merge- and, with a
// deformation, +k/d per plaquette merge+ and -k/d per plaquette merge- output.
struct GeneratorExpansion {
  int64_t p_total = 0;
  std::vector<ExpansionTerm> terms;
};

GeneratorExpansion generator_expansion(const Graph& g, const LoopCollection& c,
                                       const Deformation* deform = nullptr);

// Vertex analogue for the gauge-group identity, on discrete loops:
//   -A T(c) = d * S * T(c) + 2 * sum over per-vertex visit pairs T(result).
GeneratorExpansion vertex_expansion(const Graph& g, const LoopCollection& c);

// --- continuous-time chain ----------------------------------------------------

struct Channel {
  enum class Kind { SMplus, SMminus, Dplus, Dminus, VertexQ };
  Kind kind = Kind::SMplus;
  Vertex a = -1, b = -1;  // oriented edge (a,b); VertexQ uses a only
  double rate = 0.0;
};

bool is_positive_channel(const Channel& ch);

struct ChainMode {
  bool sm_plus = true;
  bool sm_minus = true;
  // SMplus diagonal convention: literal fires at rate N^2 with no-op mass 1/N;
  // pruned fires index-distinct pairs at rate N(N-1).
  bool literal_diagonal = false;
  std::optional<Deformation> deform;  // engaged = SMD chain
};

std::vector<Channel> active_channels(const Graph& g, const LoopCollection& c,
                                     const ChainMode& mode);
double total_rate(const std::vector<Channel>& chans);

// Applies one uniformly sampled transition of the channel. Raises
// ZeroRateChannel when the channel has no legal move in c.
LoopCollection sample_transition(const Graph& g, const LoopCollection& c, const Channel& ch,
                                 const ChainMode& mode, Rng& rng);

struct Jump {
  double time;
  Channel channel;
};

struct ChainPath {
  std::vector<Jump> jumps;
  std::vector<LoopCollection> states;  // states[i] holds on [jumps[i-1].time, jumps[i].time)
  int64_t m_plus = 0;                  // positive-channel firings (SMplus / Dplus)
  const LoopCollection& final_state() const { return states.back(); }
};

// Exact event-driven simulation on [0, t]; states[0] = c0.
ChainPath simulate_chain(const Graph& g, const LoopCollection& c0, double t,
                         const ChainMode& mode, Rng& rng);

}  // namespace loopym
