#pragma once

#include <string>

#include <json.hpp>

#include "wfd/covering.hpp"
#include "wfd/flp.hpp"

namespace wfd {

// Canonical JSON forms. Serialization always sorts labels and facet lists,
// so parse-then-serialize is byte-stable regardless of input ordering.
// Parsers throw Error(SchemaViolation) with a JSON-path diagnosis.

nlohmann::json complex_to_json(const Complex& k);
Complex complex_from_json(const nlohmann::json& j, const std::string& path);

nlohmann::json task_to_json(const ColorlessTask& t);
ColorlessTask task_from_json(const nlohmann::json& j);
ColorlessTask task_from_json_text(const std::string& text);

nlohmann::json assignment_to_json(const SimplicialMapping& m);
nlohmann::json witness_to_json(const RoundWitness& w);
// Rebuilds the witness against the task's subdivision tower.
RoundWitness witness_from_json(const nlohmann::json& j, const ColorlessTask& t, int n,
                               const Limits& limits = {});

nlohmann::json proof_to_json(const RoundReductionProof& p);
RoundReductionProof proof_from_json(const nlohmann::json& j);

nlohmann::json transcript_to_json(const FLPTranscript& tr);
FLPTranscript transcript_from_json(const nlohmann::json& j);

nlohmann::json covering_to_json(const CoveringCandidate& c);
CoveringCandidate covering_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json search_outcome_to_json(const SearchOutcome& o);

// Fixed two-space indentation plus a trailing newline.
std::string dump_canonical(const nlohmann::json& j);
nlohmann::json parse_json_text(const std::string& text);

}  // namespace wfd
