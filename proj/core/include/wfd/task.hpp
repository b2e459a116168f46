#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wfd/complex.hpp"

namespace wfd {

// A colorless task (I, O, Delta). Delta is stored extensionally for every
// simplex of I, since the image of a face is not derivable from the facets.
struct ColorlessTask {
  Complex input;
  Complex output;
  std::unordered_map<Simplex, Complex, SimplexHash> delta;

  const Complex& delta_of(const Simplex& sigma) const;

  bool operator==(const ColorlessTask& other) const {
    return input == other.input && output == other.output && delta == other.delta;
  }
  bool operator!=(const ColorlessTask& other) const { return !(*this == other); }
};

enum class ValidationMode { strict, repair, lenient };

struct TaskValidation {
  ColorlessTask task;                  // repaired copy in repair mode
  std::vector<std::string> warnings;   // lenient-mode findings
  bool carrier = true;                 // whether delta is a carrier map
};

// Checks dimension caps, output membership and the carrier property.
// strict: any violation throws. repair: intersects each Delta(sigma) with the
// images of the facets above it, then re-checks; an image that becomes empty
// is unrepairable. lenient: carrier violations are demoted to warnings.
// Structural defects (images outside O, dimension overflow, missing entries)
// are errors in every mode.
TaskValidation validate_task(const ColorlessTask& t, ValidationMode mode);

// The local task with respect to sigma and tau: inputs are the faces of tau,
// outputs Delta(sigma); solo starters must keep their value, any other face
// maps to the dimension-capped skeleton of Delta(sigma).
ColorlessTask local_task(const ColorlessTask& t, const Simplex& sigma, const Simplex& tau);

// Built-in generators.
ColorlessTask gen_set_agreement(int k);
ColorlessTask gen_hexagon();
ColorlessTask gen_epsilon_agreement(int N);

// Identifies a generated task; generators are deterministic in (name, parameters).
struct TaskId {
  std::string name;
  std::map<std::string, int> parameters;
};

// Dispatches on "hexagon", "sa", "eps". Covering tasks are generated via the
// covering module.
ColorlessTask builtin_task(const TaskId& id);

}  // namespace wfd
