#include "rotelt/vmap.hpp"

#include "rotelt/errors.hpp"

#include <stdexcept>

namespace rotelt {

namespace {

EdgePath canonical_image(const Graph& g, const VertexMap& m, EdgeId e) {
  const auto& rec = g.edge(e);
  EdgePath p = reverse_path(g, m.tracks.at(idx(rec.from)));
  p.steps.push_back({e, Orientation::Forward});
  p = concat_paths(g, p, m.tracks.at(idx(rec.to)));
  return reduce_path(p);
}

}  // namespace

LiftedVertexMap::LiftedVertexMap(CoherentLabeling labeling, VertexMap map)
    : labeling_(std::move(labeling)), map_(std::move(map)) {
  const Graph& g = labeling_.graph();
  if (map_.tracks.size() != g.vertex_count()) {
    throw SpecError("map '" + map_.name + "' needs one track per vertex");
  }
  std::vector<bool> hit(g.vertex_count(), false);
  sigma_.reserve(g.vertex_count());
  t_.reserve(g.vertex_count());
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    const VertexId v = vertex_at(i);
    const EdgePath& tr = map_.tracks[i];
    if (tr.start != v) {
      throw SpecError("track of '" + g.vertex_name(v) + "' does not start at that vertex");
    }
    VertexId end;
    try {
      end = path_end(g, tr);
    } catch (const std::invalid_argument&) {
      throw SpecError("track of '" + g.vertex_name(v) + "' is not a path");
    }
    if (hit[idx(end)]) {
      throw SpecError("vertex map is not a permutation: '" + g.vertex_name(end) +
                      "' is hit twice");
    }
    hit[idx(end)] = true;
    sigma_.push_back(end);
    t_.push_back(lift_path(labeling_, LiftedVertex{Word{}, v}, tr).end.label);
  }

  images_.reserve(g.edge_count());
  lifted_images_.reserve(g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const EdgeId e = edge_at(i);
    EdgePath img = canonical_image(g, map_, e);
    if (i < map_.images.size() && map_.images[i]) {
      const EdgePath& given = *map_.images[i];
      bool ok = given.start == img.start;
      if (ok) {
        try {
          ok = path_end(g, given) == path_end(g, img) && reduce_path(given) == img;
        } catch (const std::invalid_argument&) {
          ok = false;
        }
      }
      if (!ok) {
        throw SpecError("image of '" + g.edge_name(e) +
                        "' is not homotopic rel endpoints to the image the tracks determine (" +
                        format_path(g, img) + ")");
      }
    }
    const VertexId v1 = g.edge(e).from;
    lifted_images_.push_back(lift_path(labeling_, LiftedVertex{t_[idx(v1)], sigma_[idx(v1)]}, img));
    images_.push_back(std::move(img));
  }
}

LiftedVertexMap LiftedVertexMap::with_shift(Word gamma) const {
  LiftedVertexMap out = *this;
  out.shift_ = std::move(gamma);
  return out;
}

LiftedVertexMap validate_map(const CoherentLabeling& l, const VertexMap& m) {
  return LiftedVertexMap(l, m);
}

EdgePath edge_image(const LiftedVertexMap& lm, EdgeId e) { return lm.image(e); }

LiftedVertex apply_lift_vertex(const LiftedVertexMap& lm, const LiftedVertex& x) {
  Word label = concat_reduce(x.label, lm.t(x.vertex));
  if (!lm.shift().empty()) label = concat_reduce(lm.shift(), label);
  return {std::move(label), lm.sigma(x.vertex)};
}

std::size_t cycle_length(const LiftedVertexMap& lm, VertexId v) {
  std::size_t len = 1;
  for (VertexId w = lm.sigma(v); w != v; w = lm.sigma(w)) ++len;
  return len;
}

Word rotation_word(const LiftedVertexMap& lm, VertexId v, std::size_t iterations) {
  LiftedVertex x{Word{}, v};
  for (std::size_t i = 0; i < iterations; ++i) x = apply_lift_vertex(lm, x);
  if (x.vertex != v) throw std::invalid_argument("iteration count is not a multiple of the period");
  return x.label;
}

Word rotation_word(const LiftedVertexMap& lm, VertexId v) {
  return rotation_word(lm, v, cycle_length(lm, v));
}

RotationElement vertex_rotation(const LiftedVertexMap& lm, VertexId v) {
  const std::size_t m = cycle_length(lm, v);
  return normalize_rot(rotation_word(lm, v, m), static_cast<std::int64_t>(m));
}

LiftedVertexMap with_changed_lift(const LiftedVertexMap& lm, const Word& gamma) {
  return lm.with_shift(concat_reduce(gamma, lm.shift()));
}

LiftedPath lifted_step_image(const LiftedVertexMap& lm, const LiftedStep& s) {
  Word g = s.prefix;
  if (!lm.shift().empty()) g = concat_reduce(lm.shift(), g);
  LiftedPath img = deck(g, lm.lifted_image(s.edge));
  return s.orientation == Orientation::Forward ? img : reverse(img);
}

LiftedPath iterate_edge_lift(const LiftedVertexMap& lm, EdgeId e, std::size_t n,
                             IterationMode mode, std::size_t cap) {
  const Graph& g = lm.graph();
  const auto& rec = g.edge(e);
  LiftedPath cur{LiftedVertex{Word{}, rec.from},
                 {LiftedStep{Word{}, e, Orientation::Forward}},
                 LiftedVertex{lm.labeling().theta(e), rec.to}};
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t total = 0;
    for (const auto& s : cur.steps) total += lm.image(s.edge).size();
    if (total > cap) {
      throw ResourceError("path length " + std::to_string(total) + " at iteration " +
                          std::to_string(it + 1) + " exceeds the cap of " + std::to_string(cap));
    }
    LiftedPath next{apply_lift_vertex(lm, cur.start), {}, apply_lift_vertex(lm, cur.end)};
    next.steps.reserve(total);
    for (const auto& s : cur.steps) {
      LiftedPath img = lifted_step_image(lm, s);
      next.steps.insert(next.steps.end(), img.steps.begin(), img.steps.end());
    }
    cur = mode == IterationMode::Contracted ? contract(next) : std::move(next);
  }
  return cur;
}

LiftedVertexMap relabel(const LiftedVertexMap& lm, const SpanningTree& tree) {
  if (!lm.shift().empty()) {
    throw std::invalid_argument("a shifted lift cannot be carried to another labeling");
  }
  return LiftedVertexMap(CoherentLabeling(lm.graph(), tree), lm.map());
}

LiftedVertexMap analysis_map_for_edge(const LiftedVertexMap& lm, EdgeId e) {
  if (lm.labeling().tree().contains(e)) return lm;
  return relabel(lm, spanning_tree_containing(lm.graph(), e, lm.labeling().root()));
}

}  // namespace rotelt
