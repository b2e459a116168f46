#pragma once

#include <cstdint>
#include <string>

#include "wfd/solver.hpp"
#include "wfd/task.hpp"

namespace wfd::testsupport {

// Deterministic xorshift generator so corpora are identical across runs and
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dull;
  }

  std::size_t below(std::size_t n) { return n == 0 ? 0 : next() % n; }
  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

Complex random_complex(Rng& rng, int max_vertices, const std::string& prefix);

// A strict-valid carrier task with |V(I)| <= vi and |V(O)| <= vo. The output
// complex is exactly the union of the delta images plus its vertex set, so
// closure iteration never has to normalize away unused simplices.
ColorlessTask random_carrier_task(Rng& rng, int vi, int vo);

MapSearchProblem random_search_problem(Rng& rng, int max_src, int max_tgt);

// Exhaustive enumeration over all domain assignments; the independent oracle
// for find_map verdicts.
bool brute_force_exists(const MapSearchProblem& p);

}  // namespace wfd::testsupport
