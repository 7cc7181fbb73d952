#pragma once

// Built-in example diagrams used by tests and the CLI.

#include <string>
#include <utility>
#include <vector>

#include "khoveq/diagram.hpp"

namespace khoveq {

// name -> PD text, in a fixed order.
const std::vector<std::pair<std::string, std::string>>& corpus_diagrams();

// Throws DiagramError for unknown names.
LinkDiagram corpus_diagram(const std::string& name);

// Mirror image: every crossing switched; arcs and orientation kept.
LinkDiagram mirror(const LinkDiagram& d);

}  // namespace khoveq
