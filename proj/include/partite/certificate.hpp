#pragma once

// Self-contained certificates. A certificate records the command kind, the
// inputs and the caps that produced it; `recheck` re-derives the result from
// those alone, compares it byte for byte and runs checks that do not reuse
// the derivation.

#include <string>
#include <vector>

#include "partite/config.hpp"
#include "partite/json_io.hpp"

namespace partite {

inline constexpr const char* kToolName = "partite";
inline constexpr const char* kToolVersion = "0.1.0";

/// The "result" member for the given kind. Kinds: hj-search, hom-enum,
/// colimit, colimit-block, verify-ramsey, partite-lemma, partite-construction,
/// solecki.
json derive(const std::string& kind, const json& inputs, const Config& cfg);

/// {"kind", "tool", "version", "config", "inputs", "result"}.
json make_certificate(const std::string& kind, const json& inputs, const Config& cfg);

/// Whether the certified statement holds (false for refuted verdicts and
/// failed colimit checks).
bool certificate_holds(const json& cert);

struct RecheckReport {
  bool matches = false;               // re-derived result is byte-identical
  std::vector<std::string> failures;  // independent checks that failed

  bool ok() const { return matches && failures.empty(); }
};

RecheckReport recheck(const json& cert, unsigned threads = 0);

/// Canonical text of a JSON value as written to disk.
std::string serialize(const json& j);

}  // namespace partite
