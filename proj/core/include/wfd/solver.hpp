#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "wfd/task.hpp"

namespace wfd {

// Existence search for a vertex map source -> target subject to per-vertex
// domains, pinned assignments, and per-simplex image constraints: the image
// of each constrained simplex must be a simplex of the attached complex.
// Every facet is implicitly constrained by the target itself, so a found map
// is always simplicial.
struct MapSearchProblem {
  Complex source;
  Complex target;
  std::unordered_map<VertexId, std::vector<VertexId>> domains;
  std::vector<std::pair<Simplex, Complex>> constraints;
  std::unordered_map<VertexId, VertexId> pinned;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t backtracks = 0;
};

struct SearchOutcome {
  std::optional<SimplicialMapping> witness;
  SearchStats stats;
  bool found() const { return witness.has_value(); }
};

// Deterministic backtracking with forward checking. Variables are picked by
// (smallest live domain, highest facet degree, label); values in label order.
// `exhausted` (no witness) is only reported after a complete search; running
// out of node budget raises ResourceLimit instead.
SearchOutcome find_map(const MapSearchProblem& p, const Limits& limits = {});

// Searches for a decision map V(I) -> V(O) with image(sigma) in Delta(sigma)
// for every sigma of the (n-1)-skeleton of I.
SearchOutcome zero_round_solvable(const ColorlessTask& t, int n, const Limits& limits = {});

// One-round solvability of the local task over (sigma, tau): a simplicial
// g: Bary(tau) -> Delta(sigma) fixing the solo vertices. When tau is already
// a simplex of Delta(sigma), the canonical select-a-member witness is
// returned without searching.
SearchOutcome one_round_local_solvable(const ColorlessTask& t, const Simplex& sigma,
                                       const Simplex& tau, const Limits& limits = {});

// Solvability in exactly `rounds` rounds by n processes: a simplicial map on
// Bary^rounds of the (n-1)-skeleton of I whose image on every simplex stays
// within Delta of its carrier.
SearchOutcome t_round_solvable(const ColorlessTask& t, int n, unsigned rounds,
                               const Limits& limits = {});

// A witness at a stated depth.
struct RoundWitness {
  unsigned rounds = 0;
  SimplicialMapping map;
};

// Re-validates a claimed witness independently of any search: totality,
// vertex domains, and the per-simplex agreement with Delta.
CheckResult check_witness(const ColorlessTask& t, int n, unsigned rounds,
                          const SimplicialMapping& map, const Limits& limits = {});

}  // namespace wfd
