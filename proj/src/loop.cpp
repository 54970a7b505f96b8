#include "loopym/loop.hpp"

#include <algorithm>

namespace loopym {

namespace {

void validate_word(const Graph& g, const std::vector<Vertex>& word) {
  int p = static_cast<int>(word.size());
  for (int i = 0; i < p; ++i) {
    Vertex a = word[i];
    Vertex b = word[(i + 1) % p];
    if (a < 0 || a >= g.num_vertices()) raise(Errc::InvalidPath, "unknown vertex id");
    if (!g.has_edge(a, b))
      raise(Errc::InvalidPath, "(" + g.name(a) + "," + g.name(b) + ") is not an edge");
  }
}

std::vector<Vertex> open_word(std::vector<Vertex> word) {
  if (word.size() >= 2 && word.front() == word.back()) word.pop_back();
  return word;
}

}  // namespace

std::vector<Vertex> min_rotation(std::vector<Vertex> word) {
  int p = static_cast<int>(word.size());
  if (p <= 1) return word;
  int best = 0;
  for (int r = 1; r < p; ++r) {
    for (int i = 0; i < p; ++i) {
      Vertex a = word[(r + i) % p];
      Vertex b = word[(best + i) % p];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  std::rotate(word.begin(), word.begin() + best, word.end());
  return word;
}

Loop Loop::from_word(const Graph& g, std::vector<Vertex> word) {
  word = open_word(std::move(word));
  if (word.empty()) return trivial();
  if (word.size() == 1) raise(Errc::InvalidPath, "single-vertex loop needs a self-loop edge");
  validate_word(g, word);
  return unsafe_from_canonical(min_rotation(std::move(word)));
}

Loop Loop::from_names(const Graph& g, const std::vector<std::string>& names) {
  std::vector<Vertex> word;
  word.reserve(names.size());
  for (const auto& n : names) word.push_back(g.vertex_by_name(n));
  return from_word(g, std::move(word));
}

Loop Loop::unsafe_from_canonical(std::vector<Vertex> word) {
  Loop l;
  l.word_ = std::move(word);
  return l;
}

Vertex Loop::at(int i) const {
  int p = length();
  return word_[((i % p) + p) % p];
}

bool Loop::is_geodesic() const {
  int p = length();
  if (p < 3) return false;
  for (int i = 0; i < p; ++i)
    if (word_[(i + p - 1) % p] == word_[(i + 1) % p]) return false;
  return true;
}

Loop Loop::reversed() const {
  if (is_trivial()) return *this;
  std::vector<Vertex> w(word_.rbegin(), word_.rend());
  return unsafe_from_canonical(min_rotation(std::move(w)));
}

std::strong_ordering operator<=>(const Loop& a, const Loop& b) {
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  return a.word_ <=> b.word_;
}

Loop reduce_word(std::vector<Vertex> word) {
  bool changed = true;
  while (changed && word.size() >= 2) {
    changed = false;
    int p = static_cast<int>(word.size());
    for (int i = 0; i < p; ++i) {
      if (word[(i + p - 1) % p] == word[(i + 1) % p]) {
        // Steps (i-1 -> i) and (i -> i+1) are opposite; drop positions i, i+1.
        int j = (i + 1) % p;
        if (j > i) {
          word.erase(word.begin() + i, word.begin() + i + 2);
        } else {  // pair wraps: j == 0
          word.erase(word.begin() + i);
          word.erase(word.begin());
        }
        changed = true;
        break;
      }
    }
  }
  if (word.size() < 3) word.clear();
  return Loop::unsafe_from_canonical(min_rotation(std::move(word)));
}

Loop reduce(const Graph& g, const BasedLoop& w) {
  auto word = open_word(w.vertices);
  if (word.empty()) return Loop::trivial();
  if (word.size() == 1) raise(Errc::InvalidPath, "single-vertex loop");
  validate_word(g, word);
  return reduce_word(std::move(word));
}

Loop canonicalize(const Graph& g, const BasedLoop& w) { return Loop::from_word(g, w.vertices); }

LoopCollection::LoopCollection(const std::vector<Loop>& loops) {
  for (const auto& l : loops) add(l);
}

void LoopCollection::add(const Loop& l, int64_t mult) {
  if (mult <= 0) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), l,
                             [](const auto& e, const Loop& x) { return e.first < x; });
  if (it != entries_.end() && it->first == l)
    it->second += mult;
  else
    entries_.insert(it, {l, mult});
}

void LoopCollection::remove_one(size_t entry_index) {
  if (--entries_[entry_index].second == 0)
    entries_.erase(entries_.begin() + entry_index);
}

int64_t LoopCollection::total_instances() const {
  int64_t n = 0;
  for (const auto& [l, m] : entries_) n += m;
  return n;
}

int64_t LoopCollection::total_length() const {
  int64_t n = 0;
  for (const auto& [l, m] : entries_) n += m * l.length();
  return n;
}

bool LoopCollection::all_geodesic_or_trivial() const {
  for (const auto& [l, m] : entries_)
    if (!l.is_trivial() && !l.is_geodesic()) return false;
  return true;
}

bool LoopCollection::only_trivial() const {
  for (const auto& [l, m] : entries_)
    if (!l.is_trivial()) return false;
  return true;
}

std::vector<int> crossings(const Loop& l, Vertex x, Vertex y) {
  std::vector<int> out;
  int p = l.length();
  for (int i = 0; i < p; ++i)
    if (l.word()[i] == x && l.word()[(i + 1) % p] == y) out.push_back(i);
  return out;
}

std::vector<int64_t> winding_vector(const Graph& g, const LoopCollection& c) {
  if (!g.is_torus()) raise(Errc::NotATorus);
  int n = g.torus_n();
  int L = g.torus_L();
  std::vector<int64_t> net(n, 0);
  for (const auto& [l, m] : c.entries()) {
    int p = l.length();
    for (int i = 0; i < p; ++i) {
      auto a = g.torus_coords(l.word()[i]);
      auto b = g.torus_coords(l.word()[(i + 1) % p]);
      for (int ax = 0; ax < n; ++ax) {
        int d = b[ax] - a[ax];
        if (d == 1 - L) d = 1;
        if (d == L - 1) d = -1;
        net[ax] += m * d;
      }
    }
  }
  for (int ax = 0; ax < n; ++ax) net[ax] /= L;
  return net;
}

}  // namespace loopym
