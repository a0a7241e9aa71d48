#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rotelt {

enum class VertexId : std::uint32_t {};
enum class EdgeId : std::uint32_t {};

constexpr std::size_t idx(VertexId v) { return static_cast<std::size_t>(v); }
constexpr std::size_t idx(EdgeId e) { return static_cast<std::size_t>(e); }
constexpr VertexId vertex_at(std::size_t i) { return static_cast<VertexId>(i); }
constexpr EdgeId edge_at(std::size_t i) { return static_cast<EdgeId>(i); }

enum class Orientation { Forward, Backward };

constexpr Orientation flip(Orientation o) {
  return o == Orientation::Forward ? Orientation::Backward : Orientation::Forward;
}
constexpr Orientation compose(Orientation a, Orientation b) {
  return a == b ? Orientation::Forward : Orientation::Backward;
}

struct EdgeStep {
  EdgeId edge;
  Orientation orientation = Orientation::Forward;

  EdgeStep reversed() const { return {edge, flip(orientation)}; }
  bool operator==(const EdgeStep&) const = default;
};

struct EdgeRecord {
  std::string name;
  VertexId from;
  VertexId to;
};

/// Finite connected directed multigraph without looped edges.
class Graph {
 public:
  Graph() = default;
  /// Throws SpecError on duplicate names, bad endpoints, looped edges or a
  /// disconnected graph.
  Graph(std::vector<std::string> vertex_names, std::vector<EdgeRecord> edges);

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  /// Rank of the free fundamental group.
  std::size_t rank() const { return edges_.size() + 1 - vertex_names_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(idx(v)); }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }
  const EdgeRecord& edge(EdgeId e) const { return edges_.at(idx(e)); }
  const std::vector<EdgeRecord>& edges() const { return edges_; }
  const std::string& edge_name(EdgeId e) const { return edge(e).name; }

  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<EdgeId> find_edge(std::string_view name) const;

  VertexId step_start(EdgeStep s) const {
    return s.orientation == Orientation::Forward ? edge(s.edge).from : edge(s.edge).to;
  }
  VertexId step_end(EdgeStep s) const {
    return s.orientation == Orientation::Forward ? edge(s.edge).to : edge(s.edge).from;
  }

  /// Edges touching v, in declaration order.
  const std::vector<EdgeId>& incident(VertexId v) const { return incident_.at(idx(v)); }

  bool operator==(const Graph& other) const {
    return vertex_names_ == other.vertex_names_ && edges_equal(other);
  }

 private:
  bool edges_equal(const Graph& other) const;

  std::vector<std::string> vertex_names_;
  std::vector<EdgeRecord> edges_;
  std::vector<std::vector<EdgeId>> incident_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, EdgeId> edge_index_;
};

/// Edge path in G; an empty path sits at `start`.
struct EdgePath {
  VertexId start{};
  std::vector<EdgeStep> steps;

  bool empty() const { return steps.empty(); }
  std::size_t size() const { return steps.size(); }
  bool operator==(const EdgePath&) const = default;
};

/// Throws std::invalid_argument when consecutive steps do not meet.
VertexId path_end(const Graph& g, const EdgePath& p);
EdgePath reduce_path(const EdgePath& p);
EdgePath reverse_path(const Graph& g, const EdgePath& p);
EdgePath concat_paths(const Graph& g, const EdgePath& a, const EdgePath& b);

/// Whitespace separated steps, `~` marks a reversed edge.
std::string format_path(const Graph& g, const EdgePath& p);
EdgePath parse_path(const Graph& g, VertexId start, std::string_view text);

struct SpanningTree {
  VertexId root{};
  std::vector<bool> in_tree;  // indexed by edge

  bool contains(EdgeId e) const { return in_tree.at(idx(e)); }
  std::vector<EdgeId> edges() const;
  bool operator==(const SpanningTree&) const = default;
};

/// Validates that the edges form a spanning tree of g.
SpanningTree make_spanning_tree(const Graph& g, VertexId root, const std::vector<EdgeId>& edges);
/// Breadth-first from the root, edges scanned in declaration order.
SpanningTree bfs_spanning_tree(const Graph& g, VertexId root);
/// Breadth-first growth seeded with the edge e.
SpanningTree spanning_tree_containing(const Graph& g, EdgeId e, VertexId root);

}  // namespace rotelt
