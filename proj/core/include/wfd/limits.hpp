#pragma once

#include <cstddef>
#include <cstdint>

namespace wfd {

// Desk-scale guardrails. Exceeding a cap raises ErrorKind::ResourceLimit,
// which is always distinct from a completed (exhausted) search.
struct Limits {
  // Cap on the vertex count of any subdivision produced by bary/bary_t.
  std::size_t max_vertices = 1'000'000;
  // Cap on search-tree nodes explored by a single find_map call.
  std::uint64_t max_search_nodes = 10'000'000;
  // Cap on the byte length of a single subdivision vertex label. Labels of
  // nested subdivisions roughly double per level, so this bounds the depth
  // of adversarial FLP runs.
  std::size_t max_label_bytes = std::size_t(1) << 24;
};

}  // namespace wfd
