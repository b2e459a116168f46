#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wfd/closure.hpp"

namespace wfd {

// A candidate covering: a simplicial projection from a connected cover onto
// a connected base.
struct CoveringCandidate {
  Complex base;
  Complex cover;
  std::unordered_map<VertexId, VertexId> projection;  // cover vertex -> base vertex
};

struct CoveringReport {
  bool is_covering = false;
  std::string why;  // diagnosis when not a covering
  // Per simplex of the base, the disjoint sheets covering it.
  std::vector<std::pair<Simplex, std::vector<Simplex>>> sheets;
  int sheet_count = 0;
  bool is_trivial = false;
};

// Checks the sheet decomposition of every preimage: pairwise disjoint
// simplices, each mapped bijectively onto its base simplex, with a uniform
// sheet count. Malformed candidates (partial or non-simplicial projection,
// disconnected complexes) raise errors instead of reporting.
CoveringReport validate_covering(const CoveringCandidate& c);

// The induced colorless task: Delta(sigma) holds every cover simplex whose
// projection lies inside sigma.
ColorlessTask covering_task(const CoveringCandidate& c);

// Cycle C_{k*m} covering C_m by index reduction mod m.
CoveringCandidate gen_cyclic_cover(int m, int k);

// decide() on the induced task.
Verdict covering_impossibility(const CoveringCandidate& c, int n,
                               const ClosureOptions& opts = {}, const Limits& limits = {});

// Local isomorphism: star(v) in the cover matches star of the projected
// vertex in the base, for every cover vertex.
bool stars_locally_isomorphic(const CoveringCandidate& c);

}  // namespace wfd
