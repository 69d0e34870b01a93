#pragma once

// JSON encodings of every artifact type. Readers validate as they go and
// raise SchemaError with a JSON-pointer locus.

#include <memory>
#include <string>

#include "json.hpp"
#include "partite/colimit_block.hpp"
#include "partite/config.hpp"
#include "partite/fincat.hpp"
#include "partite/lines.hpp"
#include "partite/ramsey.hpp"
#include "partite/structlang.hpp"

namespace partite {

using json = nlohmann::json;

/// SchemaError for a value at the given JSON pointer.
[[noreturn]] void schema_error(const std::string& pointer, const std::string& what);

json to_json(const FinMap& m);
FinMap finmap_from_json(const json& j, const std::string& ptr);

json to_json(const IndexCategory& c);
std::shared_ptr<IndexCategory> index_category_from_json(const json& j, const std::string& ptr);

json to_json(const Diagram& d);
std::shared_ptr<const Diagram> diagram_from_json(const json& j, const std::string& ptr);

json to_json(const Cocone& c);
json to_json(const Colimit& c);

json to_json(const Language& l);
std::shared_ptr<const Language> language_from_json(const json& j, const std::string& ptr);

/// Function interpretations are written as explicit tables when the domain
/// has at most `maxTable` entries, otherwise as {"lazy": domain size}.
json to_json(const Structure& s, std::uint64_t maxTable = 4096);
/// Uses the embedded "language" when present, otherwise `fallback`.
Structure structure_from_json(const json& j, const std::string& ptr, std::shared_ptr<const Language> fallback);

json to_json(const Block& b);
Block block_from_json(const json& j, const std::string& ptr, std::shared_ptr<const Language> fallback);

json to_json(const Line& l);
Line line_from_json(const json& j, const std::string& ptr);

/// {"language", "i0", "X", "Y", "N"}; N may be omitted when `needN` is false.
LineInstance line_instance_from_json(const json& j, bool needN = true);

json to_json(const Config& c);
Config config_from_json(const json& j, const std::string& ptr);

json to_json(const Verdict& v);
json to_json(const HJCheck& c);
json to_json(const HJSearchResult& r);
json to_json(const ColimitBlock& cb);

}  // namespace partite
