#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace grq {

// finite quiver on vertices 0..n-1; arrows are (source, target) pairs, parallel
// arrows allowed, order of the arrow list is part of the identity
struct quiver {
  std::uint32_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arrows;

  void validate() const;  // throws invalid_input on out-of-range endpoints or n == 0
  bool is_acyclic() const;
  bool is_connected() const;  // underlying undirected graph
  bool has_loops() const;

  std::vector<std::uint32_t> in_arrows(std::uint32_t v) const;
  std::vector<std::uint32_t> out_arrows(std::uint32_t v) const;
  bool is_sink(std::uint32_t v) const { return out_arrows(v).empty(); }
  bool is_source(std::uint32_t v) const { return in_arrows(v).empty(); }
  std::vector<std::uint32_t> sinks() const;
  std::vector<std::uint32_t> sources() const;

  // all arrows incident to v reversed (BGP reflection of the quiver shape)
  quiver reversed_at(std::uint32_t v) const;
  quiver opposite() const;

  // every directed path as a list of arrow indices, vertices-only paths included
  // as empty lists (one per vertex); finite because acyclic is required
  struct path {
    std::uint32_t from, to;
    std::vector<std::uint32_t> arrows;  // in traversal order
  };
  std::vector<path> all_paths() const;

  bool operator==(const quiver& o) const { return n == o.n && arrows == o.arrows; }
};

struct preset_info {
  std::string name;
  quiver q;
  std::uint32_t default_length_bound;
  std::string description;
};

// built-in tame examples: kronecker, a21, a22_sink_source, d4_tilde
std::optional<preset_info> preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace grq
