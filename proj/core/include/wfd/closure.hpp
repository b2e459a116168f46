#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "wfd/solver.hpp"

namespace wfd {

struct ClosureOptions {
  // Skip candidate vertex sets that span more than one connected component
  // of Delta(sigma); sound for carrier maps. Verification mode turns this
  // off and must produce identical results.
  bool fast_path = true;
  // Reuse local-task verdicts keyed by (canonical Delta(sigma), tau).
  bool memoize = true;
};

// One simplex admitted into Delta'(sigma), with its one-round witness
// g: Bary(tau) -> Delta(sigma).
struct AddedSimplex {
  Simplex sigma;
  Simplex tau;
  SimplicialMapping witness;
};

struct ClosureStepReport {
  ColorlessTask before;
  ColorlessTask after;
  std::vector<AddedSimplex> added;  // sorted by (sigma, tau) label order
};

// A single application of the closure operator: Delta'(sigma) gains every
// tau <= V(Delta(sigma)) within the dimension budget whose local task is
// one-round solvable; the output complex is rebuilt from the images.
// A ResourceLimit on any candidate poisons the whole step.
ClosureStepReport closure_step(const ColorlessTask& t, const ClosureOptions& opts = {},
                               const Limits& limits = {});

struct FixedPointResult {
  ColorlessTask task;  // the fixed point
  unsigned iterations = 0;  // steps that added something
  std::vector<ClosureStepReport> chain;  // ends with a confirming step
};

FixedPointResult fixed_point(const ColorlessTask& t, const ClosureOptions& opts = {},
                             const Limits& limits = {});

// Direct construction of the fixed point from the component structure of
// each Delta(sigma): every vertex set of a single component within the
// dimension budget. Independent of the iterated route; valid for carrier
// maps.
ColorlessTask fixed_point_direct(const ColorlessTask& t);

// From an r-round witness for t, the (r-1)-round witness for Cl(t) that
// decides as the solo continuation would.
RoundWitness speedup_map(const ColorlessTask& t, const RoundWitness& f, int n,
                         const Limits& limits = {});

// The reverse direction for tasks of dimension <= 1: lifts an (r-1)-round
// witness for Cl(t) to an r-round witness for t using stored one-round
// local witnesses.
RoundWitness lift_map_1dim(const ColorlessTask& t, const RoundWitness& g, int n,
                           const Limits& limits = {});

// Proof payloads keep witness assignments as label maps so they serialize
// and re-verify without carrying whole complexes around.
struct RawAdded {
  Simplex sigma;
  Simplex tau;
  std::map<std::string, std::string> witness;
};

struct RefutationCert {
  std::uint64_t nodes_searched = 0;
};

struct RoundReductionProof {
  int n = 2;
  std::vector<std::vector<RawAdded>> chain;
  ColorlessTask fixed_point;
  RefutationCert refutation;
};

struct Solvable {
  unsigned rounds = 0;
  RoundWitness witness;
};
struct Unsolvable {
  RoundReductionProof proof;
};
struct Inconclusive {
  ColorlessTask fixed_point;
  std::string note;
};
using Verdict = std::variant<Solvable, Unsolvable, Inconclusive>;

// The decision procedure: iterate the closure to its fixed point, test
// 0-round solvability there, and either lift a witness back (dimension <= 1,
// or no iterations were needed) or emit a verifiable impossibility proof.
Verdict decide(const ColorlessTask& t, int n, const ClosureOptions& opts = {},
               const Limits& limits = {});

// Recomputes every closure step, checks the stored witnesses, the fixed
// point, and re-runs the zero-round refutation.
CheckResult verify_round_reduction_proof(const ColorlessTask& t, const RoundReductionProof& p,
                                         const Limits& limits = {});

}  // namespace wfd
