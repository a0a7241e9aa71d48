#include "rotelt/labeling.hpp"

#include "rotelt/errors.hpp"

#include <deque>
#include <stdexcept>

namespace rotelt {

CoherentLabeling::CoherentLabeling(Graph graph, SpanningTree tree)
    : graph_(std::move(graph)), tree_(std::move(tree)) {
  if (tree_.in_tree.size() != graph_.edge_count() || idx(tree_.root) >= graph_.vertex_count()) {
    throw SpecError("spanning tree does not match the graph");
  }
  // Re-validates acyclicity and spanning.
  make_spanning_tree(graph_, tree_.root, tree_.edges());

  theta_.resize(graph_.edge_count());
  for (std::size_t i = 0; i < graph_.edge_count(); ++i) {
    if (!tree_.in_tree[i]) {
      const auto g = static_cast<std::uint32_t>(generator_edges_.size());
      theta_[i] = Word::generator(g);
      generator_edges_.push_back(edge_at(i));
    }
  }
  alphabet_ = Alphabet::with_default_names(generator_edges_.size());

  tree_paths_.assign(graph_.vertex_count(), EdgePath{});
  std::vector<bool> seen(graph_.vertex_count(), false);
  std::deque<VertexId> queue{tree_.root};
  seen[idx(tree_.root)] = true;
  tree_paths_[idx(tree_.root)] = EdgePath{tree_.root, {}};
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e : graph_.incident(v)) {
      if (!tree_.contains(e)) continue;
      const auto& rec = graph_.edge(e);
      const bool forward = rec.from == v;
      const VertexId w = forward ? rec.to : rec.from;
      if (seen[idx(w)]) continue;
      seen[idx(w)] = true;
      EdgePath p = tree_paths_[idx(v)];
      p.steps.push_back({e, forward ? Orientation::Forward : Orientation::Backward});
      tree_paths_[idx(w)] = std::move(p);
      queue.push_back(w);
    }
  }

  for (EdgeId e : generator_edges_) {
    const auto& rec = graph_.edge(e);
    EdgePath loop = tree_paths_[idx(rec.from)];
    loop.steps.push_back({e, Orientation::Forward});
    loop = concat_paths(graph_, loop, reverse_path(graph_, tree_paths_[idx(rec.to)]));
    generator_loops_.push_back(reduce_path(loop));
  }
}

std::optional<std::uint32_t> CoherentLabeling::generator_of(EdgeId e) const {
  const Word& t = theta(e);
  if (t.empty()) return std::nullopt;
  return t.front().generator();
}

CoherentLabeling build_coherent_labeling(const Graph& g, const SpanningTree& t) {
  return CoherentLabeling(g, t);
}

LiftedPath lift_path(const CoherentLabeling& l, const LiftedVertex& start, const EdgePath& p) {
  if (p.start != start.vertex) throw std::invalid_argument("path does not start at the lifted vertex");
  const Graph& g = l.graph();
  LiftedPath out{start, {}, start};
  out.steps.reserve(p.steps.size());
  for (const auto& s : p.steps) {
    if (g.step_start(s) != out.end.vertex) {
      throw std::invalid_argument("path step '" + g.edge_name(s.edge) + "' is not endpoint-compatible");
    }
    const Word& th = l.theta(s.edge);
    if (s.orientation == Orientation::Forward) {
      out.steps.push_back({out.end.label, s.edge, s.orientation});
      out.end.label = concat_reduce(out.end.label, th);
    } else {
      out.end.label = concat_reduce(out.end.label, invert(th));
      out.steps.push_back({out.end.label, s.edge, s.orientation});
    }
    out.end.vertex = g.step_end(s);
  }
  return out;
}

LiftedPath contract(const LiftedPath& p) {
  LiftedPath out{p.start, {}, p.end};
  out.steps.reserve(p.steps.size());
  for (const auto& s : p.steps) {
    if (!out.steps.empty()) {
      const auto& top = out.steps.back();
      if (top.edge == s.edge && top.orientation != s.orientation && top.prefix == s.prefix) {
        out.steps.pop_back();
        continue;
      }
    }
    out.steps.push_back(s);
  }
  return out;
}

LiftedPath reverse(const LiftedPath& p) {
  LiftedPath out{p.end, {}, p.start};
  out.steps.reserve(p.steps.size());
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) {
    out.steps.push_back({it->prefix, it->edge, flip(it->orientation)});
  }
  return out;
}

LiftedPath concat(const LiftedPath& a, const LiftedPath& b) {
  if (!(a.end == b.start)) throw std::invalid_argument("lifted paths do not meet");
  LiftedPath out = a;
  out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
  out.end = b.end;
  return out;
}

EdgePath project(const LiftedPath& p) {
  EdgePath out{p.start.vertex, {}};
  out.steps.reserve(p.steps.size());
  for (const auto& s : p.steps) out.steps.push_back({s.edge, s.orientation});
  return out;
}

Word loop_word(const CoherentLabeling& l, const EdgePath& loop) {
  if (loop.start != l.root() || path_end(l.graph(), loop) != l.root()) {
    throw std::invalid_argument("path is not a loop at the basepoint");
  }
  return lift_path(l, LiftedVertex{Word{}, l.root()}, loop).end.label;
}

EdgePath word_to_loop(const CoherentLabeling& l, const Word& w) {
  EdgePath out{l.root(), {}};
  for (Letter letter : w.letters()) {
    const EdgePath& gl = l.generator_loop(letter.generator());
    if (letter.inverse()) {
      for (auto it = gl.steps.rbegin(); it != gl.steps.rend(); ++it) out.steps.push_back(it->reversed());
    } else {
      out.steps.insert(out.steps.end(), gl.steps.begin(), gl.steps.end());
    }
  }
  return reduce_path(out);
}

EdgePath canonical_path(const CoherentLabeling& l, const LiftedVertex& x) {
  EdgePath p = word_to_loop(l, x.label);
  const EdgePath& tp = l.tree_path(x.vertex);
  p.steps.insert(p.steps.end(), tp.steps.begin(), tp.steps.end());
  return reduce_path(p);
}

LiftedPath geodesic(const CoherentLabeling& l, const LiftedVertex& x, const LiftedVertex& y) {
  const Graph& g = l.graph();
  EdgePath p = reverse_path(g, canonical_path(l, x));
  const EdgePath to_y = canonical_path(l, y);
  p.steps.insert(p.steps.end(), to_y.steps.begin(), to_y.steps.end());
  LiftedPath out = lift_path(l, x, reduce_path(p));
  if (!(out.end == y)) throw std::logic_error("geodesic does not reach its target");
  return out;
}

LiftedVertex deck(const Word& g, const LiftedVertex& x) {
  return {concat_reduce(g, x.label), x.vertex};
}

LiftedPath deck(const Word& g, const LiftedPath& p) {
  if (g.empty()) return p;
  LiftedPath out{deck(g, p.start), {}, deck(g, p.end)};
  out.steps.reserve(p.steps.size());
  for (const auto& s : p.steps) out.steps.push_back({concat_reduce(g, s.prefix), s.edge, s.orientation});
  return out;
}

std::string format_vertex(const CoherentLabeling& l, const LiftedVertex& x) {
  const std::string v = l.graph().vertex_name(x.vertex);
  return x.label.empty() ? v : l.alphabet().format(x.label) + v;
}

std::string format_step(const CoherentLabeling& l, const LiftedStep& s) {
  std::string out;
  if (!s.prefix.empty()) out = l.alphabet().format(s.prefix) + ":";
  if (s.orientation == Orientation::Backward) out += '~';
  return out + l.graph().edge_name(s.edge);
}

std::string format_lifted_path(const CoherentLabeling& l, const LiftedPath& p) {
  std::string out;
  for (const auto& s : p.steps) {
    if (!out.empty()) out += ' ';
    out += format_step(l, s);
  }
  return out;
}

}  // namespace rotelt
