#pragma once

#include "rotelt/graph.hpp"
#include "rotelt/word.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rotelt {

/// Vertex label * V~ of the universal cover.
struct LiftedVertex {
  Word label;
  VertexId vertex{};

  bool operator==(const LiftedVertex&) const = default;
};

/// The lifted edge prefix * E~ traversed in the given orientation.
struct LiftedStep {
  Word prefix;
  EdgeId edge{};
  Orientation orientation = Orientation::Forward;

  bool operator==(const LiftedStep&) const = default;
};

struct LiftedPath {
  LiftedVertex start;
  std::vector<LiftedStep> steps;
  LiftedVertex end;

  bool empty() const { return steps.empty(); }
  std::size_t size() const { return steps.size(); }
  bool operator==(const LiftedPath&) const = default;
};

/// Labeling of the universal cover induced by a spanning tree: tree edges
/// carry the identity, each non-tree edge its own generator. The lift E~ of
/// an edge E: V1 -> V2 runs from V1~ to theta(E) V2~.
class CoherentLabeling {
 public:
  /// Throws SpecError when the tree does not belong to the graph.
  CoherentLabeling(Graph graph, SpanningTree tree);

  const Graph& graph() const { return graph_; }
  const SpanningTree& tree() const { return tree_; }
  VertexId root() const { return tree_.root; }
  const Alphabet& alphabet() const { return alphabet_; }

  const Word& theta(EdgeId e) const { return theta_.at(idx(e)); }
  std::optional<std::uint32_t> generator_of(EdgeId e) const;
  EdgeId generator_edge(std::uint32_t g) const { return generator_edges_.at(g); }
  std::size_t generator_count() const { return generator_edges_.size(); }

  /// Reduced tree path from the root to v.
  const EdgePath& tree_path(VertexId v) const { return tree_paths_.at(idx(v)); }
  /// tree_path(V1) * E * tree_path(V2)^-1 for the generator's edge.
  const EdgePath& generator_loop(std::uint32_t g) const { return generator_loops_.at(g); }

 private:
  Graph graph_;
  SpanningTree tree_;
  Alphabet alphabet_;
  std::vector<Word> theta_;
  std::vector<EdgeId> generator_edges_;
  std::vector<EdgePath> tree_paths_;
  std::vector<EdgePath> generator_loops_;
};

CoherentLabeling build_coherent_labeling(const Graph& g, const SpanningTree& t);

/// Lifting appends theta on the right of the running label.
LiftedPath lift_path(const CoherentLabeling& l, const LiftedVertex& start, const EdgePath& p);
/// Removes backtracking until none remains; the result is the tree geodesic.
LiftedPath contract(const LiftedPath& p);
LiftedPath reverse(const LiftedPath& p);
/// Requires a.end == b.start.
LiftedPath concat(const LiftedPath& a, const LiftedPath& b);
EdgePath project(const LiftedPath& p);

/// Group element of a loop at the root.
Word loop_word(const CoherentLabeling& l, const EdgePath& loop);
/// Reduced loop at the root spelling w.
EdgePath word_to_loop(const CoherentLabeling& l, const Word& w);
/// word_to_loop(label) followed by the tree path to the vertex, reduced.
EdgePath canonical_path(const CoherentLabeling& l, const LiftedVertex& x);
LiftedPath geodesic(const CoherentLabeling& l, const LiftedVertex& x, const LiftedVertex& y);

/// Deck transformations act by prefixing on the left.
LiftedVertex deck(const Word& g, const LiftedVertex& x);
LiftedPath deck(const Word& g, const LiftedPath& p);

/// "V2", "aV2", "~abV1".
std::string format_vertex(const CoherentLabeling& l, const LiftedVertex& x);
/// "E1", "a:E1", "a:~E1".
std::string format_step(const CoherentLabeling& l, const LiftedStep& s);
std::string format_lifted_path(const CoherentLabeling& l, const LiftedPath& p);

}  // namespace rotelt
