#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "loopym/graph.hpp"

namespace loopym {

// Closed path (xi_0, ..., xi_p = xi_0) with p >= 2; every step an oriented edge.
struct BasedLoop {
  std::vector<Vertex> vertices;
};

// Cyclic equivalence class of a based loop, stored as the lexicographically
// minimal rotation of the open word (v_0, ..., v_{p-1}). The trivial loop is
// the empty word (p = 0).
class Loop {
 public:
  Loop() = default;

  static Loop trivial() { return Loop(); }

  // Validates steps against the graph and canonicalizes. No reduction.
  // Accepts the open word (v_0..v_{p-1}) or the closed form ending in v_0.
  static Loop from_word(const Graph& g, std::vector<Vertex> word);
  static Loop from_names(const Graph& g, const std::vector<std::string>& names);

  // Already-canonical word; internal fast path, no validation.
  static Loop unsafe_from_canonical(std::vector<Vertex> word);

  int length() const { return static_cast<int>(word_.size()); }
  bool is_trivial() const { return word_.empty(); }
  const std::vector<Vertex>& word() const { return word_; }
  Vertex at(int i) const;  // cyclic indexing, i may exceed p

  // No backtracking step, including across the cyclic junction. Trivial -> false.
  bool is_geodesic() const;

  Loop reversed() const;

  friend bool operator==(const Loop&, const Loop&) = default;
  friend std::strong_ordering operator<=>(const Loop& a, const Loop& b);

 private:
  std::vector<Vertex> word_;
};

// Lexicographically minimal rotation of a cyclic word.
std::vector<Vertex> min_rotation(std::vector<Vertex> word);

// Cyclic reduction: iteratively delete adjacent opposite-edge pairs, including
// across the junction, until non-backtracking or empty.
Loop reduce(const Graph& g, const BasedLoop& w);
Loop reduce_word(std::vector<Vertex> word);  // word already validated

Loop canonicalize(const Graph& g, const BasedLoop& w);

// Multiset of loops; entries sorted, multiplicities positive.
class LoopCollection {
 public:
  LoopCollection() = default;
  explicit LoopCollection(const std::vector<Loop>& loops);

  void add(const Loop& l, int64_t mult = 1);
  // Removes one instance of entry i (drops the entry when multiplicity hits 0).
  void remove_one(size_t entry_index);

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Loop& loop(size_t i) const { return entries_[i].first; }
  int64_t multiplicity(size_t i) const { return entries_[i].second; }
  const std::vector<std::pair<Loop, int64_t>>& entries() const { return entries_; }

  int64_t total_instances() const;
  int64_t total_length() const;  // sum of mult * p
  bool all_geodesic_or_trivial() const;
  bool only_trivial() const;  // empty or every entry trivial

  friend bool operator==(const LoopCollection&, const LoopCollection&) = default;

 private:
  std::vector<std::pair<Loop, int64_t>> entries_;
};

// Crossing indices i with (w[i], w[i+1]) == (x, y).
std::vector<int> crossings(const Loop& l, Vertex x, Vertex y);

// Net displacement per axis divided by L; torus graphs only.
std::vector<int64_t> winding_vector(const Graph& g, const LoopCollection& c);

}  // namespace loopym
