#include "rotelt/graph.hpp"

#include "rotelt/errors.hpp"

#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rotelt {

Graph::Graph(std::vector<std::string> vertex_names, std::vector<EdgeRecord> edges)
    : vertex_names_(std::move(vertex_names)), edges_(std::move(edges)) {
  if (vertex_names_.empty()) throw SpecError("graph has no vertices");
  for (std::size_t i = 0; i < vertex_names_.size(); ++i) {
    if (!vertex_index_.emplace(vertex_names_[i], vertex_at(i)).second) {
      throw SpecError("duplicate vertex '" + vertex_names_[i] + "'");
    }
  }
  incident_.resize(vertex_names_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (idx(e.from) >= vertex_names_.size() || idx(e.to) >= vertex_names_.size()) {
      throw SpecError("edge '" + e.name + "' has an unknown endpoint");
    }
    if (e.from == e.to) throw SpecError("looped edges not allowed: '" + e.name + "'");
    if (!edge_index_.emplace(e.name, edge_at(i)).second) {
      throw SpecError("duplicate edge '" + e.name + "'");
    }
    if (vertex_index_.count(e.name) != 0) {
      throw SpecError("edge name '" + e.name + "' clashes with a vertex name");
    }
    incident_[idx(e.from)].push_back(edge_at(i));
    incident_[idx(e.to)].push_back(edge_at(i));
  }

  std::vector<bool> seen(vertex_names_.size(), false);
  std::deque<VertexId> queue{vertex_at(0)};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e : incident_[idx(v)]) {
      const VertexId w = edges_[idx(e)].from == v ? edges_[idx(e)].to : edges_[idx(e)].from;
      if (!seen[idx(w)]) {
        seen[idx(w)] = true;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  if (reached != vertex_names_.size()) throw SpecError("graph is not connected");
}

bool Graph::edges_equal(const Graph& other) const {
  if (edges_.size() != other.edges_.size()) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].name != other.edges_[i].name || edges_[i].from != other.edges_[i].from ||
        edges_[i].to != other.edges_[i].to) {
      return false;
    }
  }
  return true;
}

std::optional<VertexId> Graph::find_vertex(std::string_view name) const {
  auto it = vertex_index_.find(std::string(name));
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Graph::find_edge(std::string_view name) const {
  auto it = edge_index_.find(std::string(name));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

VertexId path_end(const Graph& g, const EdgePath& p) {
  VertexId at = p.start;
  for (const auto& s : p.steps) {
    if (g.step_start(s) != at) {
      throw std::invalid_argument("path step '" + g.edge_name(s.edge) +
                                  "' does not start at '" + g.vertex_name(at) + "'");
    }
    at = g.step_end(s);
  }
  return at;
}

EdgePath reduce_path(const EdgePath& p) {
  EdgePath out{p.start, {}};
  out.steps.reserve(p.steps.size());
  for (const auto& s : p.steps) {
    if (!out.steps.empty() && out.steps.back() == s.reversed()) {
      out.steps.pop_back();
    } else {
      out.steps.push_back(s);
    }
  }
  return out;
}

EdgePath reverse_path(const Graph& g, const EdgePath& p) {
  EdgePath out{path_end(g, p), {}};
  out.steps.reserve(p.steps.size());
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) out.steps.push_back(it->reversed());
  return out;
}

EdgePath concat_paths(const Graph& g, const EdgePath& a, const EdgePath& b) {
  if (path_end(g, a) != b.start) throw std::invalid_argument("paths do not meet");
  EdgePath out = a;
  out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
  return out;
}

std::string format_path(const Graph& g, const EdgePath& p) {
  std::string out;
  for (const auto& s : p.steps) {
    if (!out.empty()) out += ' ';
    if (s.orientation == Orientation::Backward) out += '~';
    out += g.edge_name(s.edge);
  }
  return out;
}

EdgePath parse_path(const Graph& g, VertexId start, std::string_view text) {
  EdgePath out{start, {}};
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    Orientation o = Orientation::Forward;
    std::string_view name = tok;
    if (!name.empty() && name.front() == '~') {
      o = Orientation::Backward;
      name.remove_prefix(1);
    }
    auto e = g.find_edge(name);
    if (!e) throw std::invalid_argument("unknown edge '" + std::string(name) + "'");
    out.steps.push_back({*e, o});
  }
  path_end(g, out);
  return out;
}

std::vector<EdgeId> SpanningTree::edges() const {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < in_tree.size(); ++i) {
    if (in_tree[i]) out.push_back(edge_at(i));
  }
  return out;
}

SpanningTree make_spanning_tree(const Graph& g, VertexId root, const std::vector<EdgeId>& edges) {
  if (idx(root) >= g.vertex_count()) throw SpecError("tree root is not a vertex");
  SpanningTree t{root, std::vector<bool>(g.edge_count(), false)};
  // Union-find over vertices detects cycles; edge count detects gaps.
  std::vector<std::size_t> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId e : edges) {
    if (idx(e) >= g.edge_count()) throw SpecError("tree edge is not an edge");
    if (t.in_tree[idx(e)]) throw SpecError("tree edge '" + g.edge_name(e) + "' listed twice");
    const auto a = find(idx(g.edge(e).from));
    const auto b = find(idx(g.edge(e).to));
    if (a == b) throw SpecError("tree edges contain a cycle through '" + g.edge_name(e) + "'");
    parent[a] = b;
    t.in_tree[idx(e)] = true;
  }
  if (edges.size() + 1 != g.vertex_count()) {
    throw SpecError("tree edges do not span the graph");
  }
  return t;
}

namespace {

SpanningTree grow_tree(const Graph& g, VertexId root, std::vector<bool> seen,
                       std::vector<bool> in_tree, std::deque<VertexId> queue) {
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e : g.incident(v)) {
      const auto& rec = g.edge(e);
      const VertexId w = rec.from == v ? rec.to : rec.from;
      if (!seen[idx(w)]) {
        seen[idx(w)] = true;
        in_tree[idx(e)] = true;
        queue.push_back(w);
      }
    }
  }
  return SpanningTree{root, std::move(in_tree)};
}

}  // namespace

SpanningTree bfs_spanning_tree(const Graph& g, VertexId root) {
  std::vector<bool> seen(g.vertex_count(), false);
  seen[idx(root)] = true;
  return grow_tree(g, root, std::move(seen), std::vector<bool>(g.edge_count(), false), {root});
}

SpanningTree spanning_tree_containing(const Graph& g, EdgeId e, VertexId root) {
  const auto& rec = g.edge(e);
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<bool> in_tree(g.edge_count(), false);
  seen[idx(rec.from)] = true;
  seen[idx(rec.to)] = true;
  in_tree[idx(e)] = true;
  return grow_tree(g, root, std::move(seen), std::move(in_tree), {rec.from, rec.to});
}

}  // namespace rotelt
