#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wfd/closure.hpp"

namespace wfd {

// A configuration reached by the prover: a simplex of the level-th
// barycentric subdivision of the initial edge sigma0, holding two views.
struct Configuration {
  unsigned level;
  Simplex simplex;
  Simplex carrier_sigma0;
};

struct ValencyEntry {
  Simplex simplex;
  std::vector<VertexId> values;  // label-sorted, nonempty
};

struct ValencyAnswer {
  std::vector<ValencyEntry> entries;
  const std::vector<VertexId>* find(const Simplex& s) const;
};

struct ValencyQuery {
  Configuration parent;
  std::vector<VertexId> parent_valency;
  std::vector<Simplex> simplices;  // the five simplices of Bary^1(parent.simplex)
};

// An adversary (or honest algorithm) answering valency queries. Oracles are
// deterministic functions of the query history, which is passed in full so
// stateful adversaries need no hidden state.
class ValencyOracle {
 public:
  virtual ~ValencyOracle() = default;
  // Valencies of every simplex of the (n-1)-skeleton of I.
  virtual std::vector<ValencyEntry> initial_valencies() = 0;
  virtual ValencyAnswer answer(const std::vector<ValencyQuery>& history,
                               const ValencyQuery& query) = 0;
};

// The stubborn adversary: solo views keep their inherited singleton, the
// middle view copies the lexicographically smaller endpoint, edges take the
// union. Its answers always validate and always leave one bivalent child.
std::unique_ptr<ValencyOracle> make_stubborn_oracle(const ColorlessTask& t, int n);

// An oracle that truthfully reports the valencies induced by a witness of
// the given depth. Throws WitnessInvalid if the witness does not validate.
std::unique_ptr<ValencyOracle> make_honest_oracle(const ColorlessTask& t, int n,
                                                  RoundWitness witness);

// The three consistency conditions (self, Delta, monotone) plus the
// singleton rule for vertex valencies, relative to the parent configuration.
CheckResult validate_valency(const Configuration& parent,
                             const std::vector<VertexId>& parent_val,
                             const ValencyAnswer& answer, const ColorlessTask& t,
                             const Simplex& sigma0);

struct InitAttack {
  Simplex sigma0;
  std::vector<VertexId> component;        // component of Delta(sigma0) holding delta(x)
  std::vector<VertexId> component_prime;  // distinct component holding delta(x')
  Simplex violating_simplex;              // sigma with delta(sigma) outside the fixed point
};

// Validates the initial valencies, computes the closure fixed point and
// looks for a simplex whose solo decisions leave it. nullopt means the
// prover concedes immediately (no attack exists for these decisions).
std::optional<InitAttack> prover_init(const ColorlessTask& t, int n,
                                      const std::vector<ValencyEntry>& initial_vals,
                                      const ClosureOptions& opts = {}, const Limits& limits = {});

struct StepChoice {
  Configuration next;
  std::pair<std::vector<VertexId>, std::vector<VertexId>> bivalence;
};

// Picks a bivalent edge of Bary^1(current.simplex); ties break on labels.
// Throws NoBivalentChild when every child is univalent.
StepChoice prover_step(const ColorlessTask& t, const Simplex& sigma0,
                       const std::vector<std::vector<VertexId>>& components,
                       const Configuration& current, const ValencyAnswer& answer);

struct TranscriptStep {
  Configuration config;
  ValencyAnswer valencies;
  Simplex chosen;
  std::pair<std::vector<VertexId>, std::vector<VertexId>> bivalence;
};

struct FLPTranscript {
  std::string task_ref;  // informational task id
  int n;
  Simplex sigma0;
  std::pair<std::vector<VertexId>, std::vector<VertexId>> component_pair;
  std::vector<TranscriptStep> steps;
};

struct ProverConcedes {
  enum class Reason { no_attack, no_bivalent_child };
  unsigned steps_taken;
  Reason reason;
};

using FlpOutcome = std::variant<FLPTranscript, ProverConcedes>;

// Runs prover_init and then `steps` prover steps against the oracle. Every
// oracle answer is validated first; an inconsistent answer loses the game
// for the oracle and raises InconsistentOracle.
FlpOutcome flp_from_round_reduction(const ColorlessTask& t, int n, ValencyOracle& oracle,
                                    unsigned steps, const ClosureOptions& opts = {},
                                    const Limits& limits = {});

// Rechecks the initial attack data, every consistency condition, every
// bivalence certificate and every level containment.
CheckResult verify_transcript(const ColorlessTask& t, int n, const FLPTranscript& tr,
                              const Limits& limits = {});

}  // namespace wfd
