#pragma once

#include "rotelt/vmap.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace rotelt {

/// A parsed and validated spec file.
struct SpecFile {
  std::string graph_name;
  Graph graph;
  VertexId basepoint{};
  bool explicit_tree = false;
  SpanningTree tree;
  std::optional<VertexMap> map;

  bool operator==(const SpecFile&) const = default;
};

/// Line-oriented grammar:
///   graph <name>
///   vertex <id>...
///   edge <id> <from> <to>
///   basepoint <id>
///   tree <edge>...
///   map <name>
///   track <vertex> <steps>
///   image <edge> <steps>
/// Steps are edge names, `~` marking reversal. `#` starts a comment.
/// Throws SpecError carrying line, column and kind.
SpecFile parse_spec_text(std::string_view text);

/// Throws std::ios_base::failure when the file cannot be read.
SpecFile parse_spec(const std::filesystem::path& path);

/// Canonical text that parses back to an equal SpecFile.
std::string emit_spec(const SpecFile& spec);

CoherentLabeling labeling_of(const SpecFile& spec);
/// Throws SpecError when the file has no map block.
LiftedVertexMap lifted_map_of(const SpecFile& spec);

}  // namespace rotelt
