#pragma once

// Graphviz output. Nodes and edges are emitted in index order, cocone legs
// as dashed edges into the apex.

#include <string>

#include "partite/colimit_block.hpp"
#include "partite/fincat.hpp"

namespace partite {

std::string to_dot(const Diagram& d, const Cocone* cocone = nullptr);
std::string to_dot(const ColimitBlock& cb);

}  // namespace partite
