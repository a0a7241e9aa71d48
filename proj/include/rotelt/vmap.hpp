#pragma once

#include "rotelt/labeling.hpp"
#include "rotelt/rotation.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace rotelt {

/// A vertex map given by its homotopy tracks. Explicit edge images are
/// optional and only checked against the tracks.
struct VertexMap {
  std::string name;
  std::vector<EdgePath> tracks;                 // indexed by vertex
  std::vector<std::optional<EdgePath>> images;  // indexed by edge; may be empty

  bool operator==(const VertexMap&) const = default;
};

enum class IterationMode { Contracted, Branchwise };

inline constexpr std::size_t kDefaultLengthCap = 1'000'000;

/// A validated vertex map together with its chosen lift, f~(V~) = t(V) sigma(V)~,
/// optionally composed on the left with a deck transformation.
class LiftedVertexMap {
 public:
  LiftedVertexMap(CoherentLabeling labeling, VertexMap map);

  const CoherentLabeling& labeling() const { return labeling_; }
  const Graph& graph() const { return labeling_.graph(); }
  const VertexMap& map() const { return map_; }

  VertexId sigma(VertexId v) const { return sigma_.at(idx(v)); }
  const std::vector<VertexId>& sigma() const { return sigma_; }
  const EdgePath& track(VertexId v) const { return map_.tracks.at(idx(v)); }
  /// Word read off the lifted track of v.
  const Word& t(VertexId v) const { return t_.at(idx(v)); }
  /// reduce(track(V1)^-1 E track(V2)).
  const EdgePath& image(EdgeId e) const { return images_.at(idx(e)); }
  /// The image lifted from f~(V1~), before any deck shift.
  const LiftedPath& lifted_image(EdgeId e) const { return lifted_images_.at(idx(e)); }
  /// Deck transformation composed on the left of the canonical lift.
  const Word& shift() const { return shift_; }

  LiftedVertexMap with_shift(Word gamma) const;

 private:
  CoherentLabeling labeling_;
  VertexMap map_;
  std::vector<VertexId> sigma_;
  std::vector<Word> t_;
  std::vector<EdgePath> images_;
  std::vector<LiftedPath> lifted_images_;
  Word shift_;
};

/// Throws SpecError when sigma is not a permutation, a track does not start
/// at its vertex, or an explicit image is not homotopic rel endpoints to the
/// one the tracks determine.
LiftedVertexMap validate_map(const CoherentLabeling& l, const VertexMap& m);

EdgePath edge_image(const LiftedVertexMap& lm, EdgeId e);
LiftedVertex apply_lift_vertex(const LiftedVertexMap& lm, const LiftedVertex& x);

std::size_t cycle_length(const LiftedVertexMap& lm, VertexId v);
/// Label reached from v~ after the given number of iterations.
Word rotation_word(const LiftedVertexMap& lm, VertexId v, std::size_t iterations);
/// Label reached after one sigma-cycle.
Word rotation_word(const LiftedVertexMap& lm, VertexId v);
RotationElement vertex_rotation(const LiftedVertexMap& lm, VertexId v);

/// The lift gamma f~.
LiftedVertexMap with_changed_lift(const LiftedVertexMap& lm, const Word& gamma);

/// f~ applied to one lifted edge, traversed in the step's orientation.
LiftedPath lifted_step_image(const LiftedVertexMap& lm, const LiftedStep& s);

/// f~^n(E~). Throws ResourceError when a path would exceed the cap.
LiftedPath iterate_edge_lift(const LiftedVertexMap& lm, EdgeId e, std::size_t n,
                             IterationMode mode, std::size_t cap = kDefaultLengthCap);

/// Same tracks, new coherent labeling. Requires the trivial shift.
LiftedVertexMap relabel(const LiftedVertexMap& lm, const SpanningTree& tree);

/// lm itself when e is a tree edge, otherwise relabeled over a tree containing e.
LiftedVertexMap analysis_map_for_edge(const LiftedVertexMap& lm, EdgeId e);

}  // namespace rotelt
