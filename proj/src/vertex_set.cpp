#include "copnum/vertex_set.hpp"

#include <bit>
#include <string>

#include "copnum/error.hpp"
#include "copnum/random.hpp"

namespace copnum {

VertexSet::VertexSet(std::size_t universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {}

VertexSet::VertexSet(std::size_t universe, std::initializer_list<Vertex> members)
    : VertexSet(universe) {
  for (Vertex v : members) insert(v);
}

VertexSet::VertexSet(std::size_t universe, std::span<const Vertex> members)
    : VertexSet(universe) {
  for (Vertex v : members) insert(v);
}

VertexSet VertexSet::full(std::size_t universe) {
  VertexSet s(universe);
  for (std::size_t v = 0; v < universe; ++v) s.insert(static_cast<Vertex>(v));
  return s;
}

bool VertexSet::insert(Vertex v) {
  if (v >= universe_) {
    throw Error("vertex " + std::to_string(v) + " out of range for universe of " +
                std::to_string(universe_));
  }
  std::uint64_t& word = words_[v >> 6];
  const std::uint64_t mask = std::uint64_t{1} << (v & 63);
  if ((word & mask) != 0) return false;
  word |= mask;
  ++count_;
  return true;
}

bool VertexSet::erase(Vertex v) {
  if (!contains(v)) return false;
  words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  --count_;
  return true;
}

std::vector<Vertex> VertexSet::to_vector() const {
  std::vector<Vertex> out;
  out.reserve(count_);
  for_each([&](Vertex v) { out.push_back(v); });
  return out;
}

void VertexSet::require_same_universe(const VertexSet& other) const {
  if (universe_ != other.universe_) throw Error("vertex sets over different universes");
}

bool VertexSet::intersects(const VertexSet& other) const {
  require_same_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  require_same_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

VertexSet VertexSet::operator|(const VertexSet& other) const {
  require_same_universe(other);
  VertexSet out(*this);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] |= other.words_[w];
  out.count_ = out.popcount();
  return out;
}

VertexSet VertexSet::operator&(const VertexSet& other) const {
  require_same_universe(other);
  VertexSet out(*this);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] &= other.words_[w];
  out.count_ = out.popcount();
  return out;
}

VertexSet VertexSet::operator-(const VertexSet& other) const {
  require_same_universe(other);
  VertexSet out(*this);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] &= ~other.words_[w];
  out.count_ = out.popcount();
  return out;
}

bool VertexSet::operator==(const VertexSet& other) const {
  return universe_ == other.universe_ && words_ == other.words_;
}

std::size_t VertexSet::popcount() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t k,
                                                      Rng& rng) {
  if (k > n) throw Error("cannot sample " + std::to_string(k) + " of " + std::to_string(n));
  std::vector<std::uint32_t> pool(n);
  for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::uint32_t>(uniform_below(rng, n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace copnum
