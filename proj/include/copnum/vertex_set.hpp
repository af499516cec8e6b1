#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace copnum {

using Vertex = std::uint32_t;

// Bitset over the vertex universe {0..universe-1}. The cardinality is kept
// alongside the bits and always equals their popcount.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe);
  VertexSet(std::size_t universe, std::initializer_list<Vertex> members);
  VertexSet(std::size_t universe, std::span<const Vertex> members);

  static VertexSet full(std::size_t universe);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(Vertex v) const noexcept {
    return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1U) != 0;
  }
  // Both return whether the set changed.
  bool insert(Vertex v);
  bool erase(Vertex v);

  std::vector<Vertex> to_vector() const;

  bool intersects(const VertexSet& other) const;
  bool is_subset_of(const VertexSet& other) const;

  VertexSet operator|(const VertexSet& other) const;
  VertexSet operator&(const VertexSet& other) const;
  VertexSet operator-(const VertexSet& other) const;
  bool operator==(const VertexSet& other) const;

  // Recounts from the bits; used by invariant tests.
  std::size_t popcount() const noexcept;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int bit = __builtin_ctzll(bits);
        fn(static_cast<Vertex>(w * 64 + static_cast<std::size_t>(bit)));
        bits &= bits - 1;
      }
    }
  }

 private:
  void require_same_universe(const VertexSet& other) const;

  std::size_t universe_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace copnum
