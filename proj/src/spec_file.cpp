#include "rotelt/spec_file.hpp"

#include "rotelt/errors.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>

namespace rotelt {

namespace {

struct Token {
  std::string text;
  int column = 0;
};

struct Statement {
  int line = 0;
  std::vector<Token> tokens;

  const Token& keyword() const { return tokens.front(); }
  std::size_t args() const { return tokens.size() - 1; }
};

std::vector<Statement> tokenize(std::string_view text) {
  std::vector<Statement> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Statement st{line_no, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size()) break;
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      st.tokens.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    if (!st.tokens.empty()) out.push_back(std::move(st));
    pos = eol + 1;
  }
  return out;
}

[[noreturn]] void fail(const std::string& msg, int line, int column, SpecErrorKind kind) {
  throw SpecError(msg, line, column, kind);
}

void expect_args(const Statement& st, std::size_t min, std::size_t max) {
  const std::size_t n = st.args();
  if (n < min || n > max) {
    std::string want = min == max ? std::to_string(min) : "at least " + std::to_string(min);
    fail("'" + st.keyword().text + "' expects " + want + " argument(s), got " + std::to_string(n),
         st.line, st.keyword().column, SpecErrorKind::Syntax);
  }
}

void check_name(const Token& t, int line) {
  if (t.text.front() == '~' || t.text == "1") {
    fail("invalid identifier '" + t.text + "'", line, t.column, SpecErrorKind::Syntax);
  }
}

/// Resolves steps starting at a token index and checks they compose.
EdgePath resolve_steps(const Graph& g, VertexId start, const Statement& st, std::size_t first,
                       const std::string& what) {
  EdgePath p{start, {}};
  VertexId at = start;
  for (std::size_t i = first; i < st.tokens.size(); ++i) {
    const Token& t = st.tokens[i];
    std::string_view name = t.text;
    Orientation o = Orientation::Forward;
    if (name.front() == '~') {
      o = Orientation::Backward;
      name.remove_prefix(1);
    }
    const auto e = g.find_edge(name);
    if (!e) fail("unknown edge '" + std::string(name) + "'", st.line, t.column, SpecErrorKind::UnknownIdentifier);
    const EdgeStep s{*e, o};
    if (g.step_start(s) != at) {
      fail(what + " is not a path: step '" + t.text + "' does not start at '" + g.vertex_name(at) + "'",
           st.line, t.column, SpecErrorKind::Invariant);
    }
    at = g.step_end(s);
    p.steps.push_back(s);
  }
  return p;
}

}  // namespace

SpecFile parse_spec_text(std::string_view text) {
  const auto statements = tokenize(text);
  SpecFile spec;

  const Statement* graph_st = nullptr;
  const Statement* basepoint_st = nullptr;
  const Statement* tree_st = nullptr;
  const Statement* map_st = nullptr;
  std::vector<const Statement*> vertex_sts;
  std::vector<const Statement*> edge_sts;
  std::vector<const Statement*> track_sts;
  std::vector<const Statement*> image_sts;

  for (const Statement& st : statements) {
    const std::string& kw = st.keyword().text;
    const bool in_map = map_st != nullptr;
    if (!graph_st && kw != "graph") {
      fail("expected 'graph' before '" + kw + "'", st.line, st.keyword().column, SpecErrorKind::Syntax);
    }
    const auto once = [&](const Statement*& slot) {
      if (slot) fail("duplicate '" + kw + "' statement", st.line, st.keyword().column, SpecErrorKind::Syntax);
      slot = &st;
    };
    const auto graph_part = [&] {
      if (in_map) {
        fail("'" + kw + "' must precede the map block", st.line, st.keyword().column, SpecErrorKind::Syntax);
      }
    };
    if (kw == "graph") {
      expect_args(st, 1, 1);
      once(graph_st);
    } else if (kw == "vertex") {
      graph_part();
      expect_args(st, 1, SIZE_MAX);
      vertex_sts.push_back(&st);
    } else if (kw == "edge") {
      graph_part();
      expect_args(st, 3, 3);
      edge_sts.push_back(&st);
    } else if (kw == "basepoint") {
      graph_part();
      expect_args(st, 1, 1);
      once(basepoint_st);
    } else if (kw == "tree") {
      graph_part();
      once(tree_st);
    } else if (kw == "map") {
      expect_args(st, 1, 1);
      once(map_st);
    } else if (kw == "track" || kw == "image") {
      if (!in_map) fail("'" + kw + "' outside a map block", st.line, st.keyword().column, SpecErrorKind::Syntax);
      expect_args(st, 1, SIZE_MAX);
      (kw == "track" ? track_sts : image_sts).push_back(&st);
    } else {
      fail("unknown statement '" + kw + "'", st.line, st.keyword().column, SpecErrorKind::Syntax);
    }
  }
  if (!graph_st) fail("empty spec: expected 'graph'", 1, 1, SpecErrorKind::Syntax);
  spec.graph_name = graph_st->tokens[1].text;

  std::vector<std::string> vertex_names;
  std::map<std::string, VertexId> vertex_index;
  for (const Statement* st : vertex_sts) {
    for (std::size_t i = 1; i < st->tokens.size(); ++i) {
      const Token& t = st->tokens[i];
      check_name(t, st->line);
      if (vertex_index.count(t.text)) {
        fail("duplicate vertex '" + t.text + "'", st->line, t.column, SpecErrorKind::Invariant);
      }
      vertex_index.emplace(t.text, vertex_at(vertex_names.size()));
      vertex_names.push_back(t.text);
    }
  }
  if (vertex_names.empty()) fail("graph has no vertices", graph_st->line, 1, SpecErrorKind::Invariant);

  const auto find_vertex = [&](const Statement& st, std::size_t i) {
    const Token& t = st.tokens[i];
    auto it = vertex_index.find(t.text);
    if (it == vertex_index.end()) {
      fail("unknown vertex '" + t.text + "'", st.line, t.column, SpecErrorKind::UnknownIdentifier);
    }
    return it->second;
  };

  std::vector<EdgeRecord> edges;
  std::map<std::string, int> edge_lines;
  for (const Statement* st : edge_sts) {
    const Token& name = st->tokens[1];
    check_name(name, st->line);
    if (edge_lines.count(name.text)) {
      fail("duplicate edge '" + name.text + "'", st->line, name.column, SpecErrorKind::Invariant);
    }
    if (vertex_index.count(name.text)) {
      fail("edge name '" + name.text + "' clashes with a vertex name", st->line, name.column,
           SpecErrorKind::Invariant);
    }
    const VertexId from = find_vertex(*st, 2);
    const VertexId to = find_vertex(*st, 3);
    if (from == to) {
      fail("looped edges not allowed: '" + name.text + "'", st->line, name.column, SpecErrorKind::Invariant);
    }
    edge_lines.emplace(name.text, st->line);
    edges.push_back({name.text, from, to});
  }
  try {
    spec.graph = Graph(vertex_names, edges);
  } catch (const SpecError& e) {
    fail(e.what(), graph_st->line, 1, SpecErrorKind::Invariant);
  }
  const Graph& g = spec.graph;

  spec.basepoint = basepoint_st ? find_vertex(*basepoint_st, 1) : vertex_at(0);
  if (tree_st) {
    std::vector<EdgeId> tree_edges;
    for (std::size_t i = 1; i < tree_st->tokens.size(); ++i) {
      const Token& t = tree_st->tokens[i];
      const auto e = g.find_edge(t.text);
      if (!e) fail("unknown edge '" + t.text + "'", tree_st->line, t.column, SpecErrorKind::UnknownIdentifier);
      tree_edges.push_back(*e);
    }
    try {
      spec.tree = make_spanning_tree(g, spec.basepoint, tree_edges);
    } catch (const SpecError& e) {
      fail(e.what(), tree_st->line, 1, SpecErrorKind::Invariant);
    }
    spec.explicit_tree = true;
  } else {
    spec.tree = bfs_spanning_tree(g, spec.basepoint);
  }

  if (!map_st) return spec;

  VertexMap m;
  m.name = map_st->tokens[1].text;
  std::vector<std::optional<EdgePath>> tracks(g.vertex_count());
  std::vector<int> track_lines(g.vertex_count(), 0);
  for (const Statement* st : track_sts) {
    const VertexId v = find_vertex(*st, 1);
    if (tracks[idx(v)]) {
      fail("duplicate track for vertex '" + g.vertex_name(v) + "'", st->line, st->tokens[1].column,
           SpecErrorKind::Invariant);
    }
    tracks[idx(v)] = resolve_steps(g, v, *st, 2, "track of '" + g.vertex_name(v) + "'");
    track_lines[idx(v)] = st->line;
  }
  std::map<VertexId, VertexId> hit_by;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    if (!tracks[i]) {
      fail("missing track for vertex '" + g.vertex_name(vertex_at(i)) + "'", map_st->line, 1,
           SpecErrorKind::Invariant);
    }
    const VertexId end = path_end(g, *tracks[i]);
    if (auto it = hit_by.find(end); it != hit_by.end()) {
      fail("vertex map is not a permutation: tracks of '" + g.vertex_name(it->second) + "' and '" +
               g.vertex_name(vertex_at(i)) + "' both end at '" + g.vertex_name(end) + "'",
           track_lines[i], 1, SpecErrorKind::Invariant);
    }
    hit_by.emplace(end, vertex_at(i));
    m.tracks.push_back(*tracks[i]);
  }

  m.images.assign(g.edge_count(), std::nullopt);
  for (const Statement* st : image_sts) {
    const Token& t = st->tokens[1];
    const auto e = g.find_edge(t.text);
    if (!e) fail("unknown edge '" + t.text + "'", st->line, t.column, SpecErrorKind::UnknownIdentifier);
    if (m.images[idx(*e)]) {
      fail("duplicate image for edge '" + t.text + "'", st->line, t.column, SpecErrorKind::Invariant);
    }
    const VertexId start = path_end(g, m.tracks[idx(g.edge(*e).from)]);
    m.images[idx(*e)] = resolve_steps(g, start, *st, 2, "image of '" + t.text + "'");
    VertexMap probe = m;
    try {
      LiftedVertexMap(CoherentLabeling(g, spec.tree), probe);
    } catch (const SpecError& err) {
      fail(err.what(), st->line, t.column, SpecErrorKind::Invariant);
    }
  }
  spec.map = std::move(m);
  lifted_map_of(spec);
  return spec;
}

SpecFile parse_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

std::string emit_spec(const SpecFile& spec) {
  const Graph& g = spec.graph;
  std::ostringstream out;
  out << "graph " << spec.graph_name << '\n';
  out << "vertex";
  for (const auto& v : g.vertex_names()) out << ' ' << v;
  out << '\n';
  for (const auto& e : g.edges()) {
    out << "edge " << e.name << ' ' << g.vertex_name(e.from) << ' ' << g.vertex_name(e.to) << '\n';
  }
  out << "basepoint " << g.vertex_name(spec.basepoint) << '\n';
  if (spec.explicit_tree) {
    out << "tree";
    for (EdgeId e : spec.tree.edges()) out << ' ' << g.edge_name(e);
    out << '\n';
  }
  if (spec.map) {
    out << "map " << spec.map->name << '\n';
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      out << "track " << g.vertex_name(vertex_at(i));
      if (!spec.map->tracks[i].empty()) out << ' ' << format_path(g, spec.map->tracks[i]);
      out << '\n';
    }
    for (std::size_t i = 0; i < spec.map->images.size(); ++i) {
      if (const auto& img = spec.map->images[i]) {
        out << "image " << g.edge_name(edge_at(i));
        if (!img->empty()) out << ' ' << format_path(g, *img);
        out << '\n';
      }
    }
  }
  return out.str();
}

CoherentLabeling labeling_of(const SpecFile& spec) { return CoherentLabeling(spec.graph, spec.tree); }

LiftedVertexMap lifted_map_of(const SpecFile& spec) {
  if (!spec.map) throw SpecError("spec has no map block");
  return LiftedVertexMap(labeling_of(spec), *spec.map);
}

}  // namespace rotelt
