#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace fitbench {

// Dense, non-negative node handle, unique within one graph for the graph's
// lifetime (nodes are never removed, so ids are never reused).
struct NodeId {
  std::uint32_t index = 0;

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

}  // namespace fitbench

template <>
struct std::hash<fitbench::NodeId> {
  std::size_t operator()(const fitbench::NodeId& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.index);
  }
};
