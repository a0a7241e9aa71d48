#pragma once

// Independent oracles and hand-rolled generators shared by the test suites.
// Words are written as strings: a lowercase letter is a generator and the
// matching uppercase letter its inverse.

#include "rotelt/errors.hpp"
#include "rotelt/oracle.hpp"
#include "rotelt/spec_file.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace rotelt::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(ROTELT_FIXTURE_DIR) + "/" + name;
}

inline SpecFile load_fixture(const std::string& name) { return parse_spec(fixture_path(name)); }

inline LiftedVertexMap fixture_map(const std::string& name) { return lifted_map_of(load_fixture(name)); }

// ---------------------------------------------------------------- string words

inline char inverse_char(char c) {
  return std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c))
                                                     : static_cast<char>(std::tolower(c));
}

/// Stack reduction on characters.
inline std::string str_reduce(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!out.empty() && out.back() == inverse_char(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

inline std::string str_invert(const std::string& s) {
  std::string out(s.rbegin(), s.rend());
  for (char& c : out) c = inverse_char(c);
  return out;
}

inline std::string str_cyclic_core(std::string s) {
  s = str_reduce(s);
  while (s.size() >= 2 && s.front() == inverse_char(s.back())) s = s.substr(1, s.size() - 2);
  return s;
}

/// Smallest d with s the (len/d)-th power of its prefix of length d.
inline std::pair<std::string, int> str_periodic_root(const std::string& s) {
  for (std::size_t d = 1; d <= s.size(); ++d) {
    if (s.size() % d) continue;
    std::string rep;
    while (rep.size() < s.size()) rep += s.substr(0, d);
    if (rep == s) return {s.substr(0, d), static_cast<int>(s.size() / d)};
  }
  return {s, 1};
}

/// Root in the free group: strip the conjugator, take the periodic root of
/// the cyclic core and conjugate back.
inline std::pair<std::string, int> str_root(const std::string& w) {
  std::string s = str_reduce(w);
  std::string conj;
  while (s.size() >= 2 && s.front() == inverse_char(s.back())) {
    conj.push_back(s.front());
    s = s.substr(1, s.size() - 2);
  }
  const auto [root, k] = str_periodic_root(s);
  return {str_reduce(conj + root + str_invert(conj)), k};
}

inline bool str_conjugate(const std::string& u, const std::string& v) {
  const std::string cu = str_cyclic_core(u);
  const std::string cv = str_cyclic_core(v);
  return cu.size() == cv.size() && (cu + cu).find(cv) != std::string::npos;
}

inline Word from_str(const std::string& s) {
  std::vector<Letter> ls;
  for (char c : s) {
    const bool inv = std::isupper(static_cast<unsigned char>(c));
    ls.emplace_back(static_cast<std::uint32_t>(std::tolower(c) - 'a'), inv);
  }
  return Word::from_letters(ls);
}

inline std::string to_str(const Word& w) {
  std::string s;
  for (Letter l : w.letters()) {
    const char c = static_cast<char>('a' + l.generator());
    s.push_back(l.inverse() ? static_cast<char>(std::toupper(c)) : c);
  }
  return s;
}

// ---------------------------------------------------------------- generators

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Unreduced random string over the first `gens` generators.
inline std::string random_string(Rng& rng, int gens, int max_len) {
  std::string s;
  const int len = uniform(rng, 0, max_len);
  for (int i = 0; i < len; ++i) {
    const char c = static_cast<char>('a' + uniform(rng, 0, gens - 1));
    s.push_back(uniform(rng, 0, 1) ? c : inverse_char(c));
  }
  return s;
}

/// Reduced random word of length at most max_len.
inline Word random_word(Rng& rng, int gens, int max_len) {
  std::string s;
  const int len = uniform(rng, 0, max_len);
  while (static_cast<int>(s.size()) < len) {
    const char c = static_cast<char>('a' + uniform(rng, 0, gens - 1));
    const char d = uniform(rng, 0, 1) ? c : inverse_char(c);
    if (!s.empty() && s.back() == inverse_char(d)) continue;
    s.push_back(d);
  }
  return from_str(s);
}

/// Connected graph without looped edges; vertex i is "Vi+1", edge j is "Ej+1".
inline Graph random_graph(Rng& rng, int max_vertices, int max_edges) {
  const int nv = uniform(rng, 2, max_vertices);
  const int ne = uniform(rng, nv - 1 + (nv == 2 ? 1 : 0), std::max(nv - 1, max_edges));
  std::vector<std::string> names;
  for (int i = 0; i < nv; ++i) names.push_back("V" + std::to_string(i + 1));
  std::vector<std::pair<int, int>> ends;
  for (int i = 1; i < nv; ++i) {
    const int j = uniform(rng, 0, i - 1);
    ends.push_back(uniform(rng, 0, 1) ? std::pair{i, j} : std::pair{j, i});
  }
  while (static_cast<int>(ends.size()) < ne) {
    const int i = uniform(rng, 0, nv - 1);
    const int j = uniform(rng, 0, nv - 1);
    if (i != j) ends.emplace_back(i, j);
  }
  std::shuffle(ends.begin(), ends.end(), rng);
  std::vector<EdgeRecord> edges;
  for (std::size_t k = 0; k < ends.size(); ++k) {
    edges.push_back({"E" + std::to_string(k + 1), vertex_at(ends[k].first), vertex_at(ends[k].second)});
  }
  return Graph(names, edges);
}

/// Shortest path in the graph by breadth-first search, ignoring orientation.
inline EdgePath graph_path(const Graph& g, VertexId from, VertexId to) {
  std::vector<std::optional<EdgeStep>> via(g.vertex_count());
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<VertexId> queue{from};
  seen[idx(from)] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId v = queue[head];
    for (EdgeId e : g.incident(v)) {
      const EdgeStep s{e, g.edge(e).from == v ? Orientation::Forward : Orientation::Backward};
      const VertexId w = g.step_end(s);
      if (seen[idx(w)]) continue;
      seen[idx(w)] = true;
      via[idx(w)] = s;
      queue.push_back(w);
    }
  }
  std::vector<EdgeStep> steps;
  for (VertexId v = to; v != from;) {
    const EdgeStep s = *via[idx(v)];
    steps.push_back(s);
    v = g.step_start(s);
  }
  std::reverse(steps.begin(), steps.end());
  return {from, steps};
}

/// A random walk of up to `walk` steps from v followed by a shortest path to target.
inline EdgePath random_track(Rng& rng, const Graph& g, VertexId v, VertexId target, int walk) {
  EdgePath p{v, {}};
  VertexId at = v;
  const int len = uniform(rng, 0, walk);
  for (int i = 0; i < len; ++i) {
    const auto& inc = g.incident(at);
    const EdgeId e = inc[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(inc.size()) - 1))];
    const EdgeStep s{e, g.edge(e).from == at ? Orientation::Forward : Orientation::Backward};
    p.steps.push_back(s);
    at = g.step_end(s);
  }
  const EdgePath rest = graph_path(g, at, target);
  p.steps.insert(p.steps.end(), rest.steps.begin(), rest.steps.end());
  return reduce_path(p);
}

inline std::vector<VertexId> random_permutation(Rng& rng, std::size_t n) {
  std::vector<VertexId> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(vertex_at(i));
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline VertexMap map_from_tracks(std::vector<EdgePath> tracks, std::size_t edges) {
  return VertexMap{"random", std::move(tracks), std::vector<std::optional<EdgePath>>(edges)};
}

/// A valid vertex map on a random graph with the given vertex permutation rule.
inline LiftedVertexMap random_map(Rng& rng, const Graph& g, const std::vector<VertexId>& sigma, int walk) {
  std::vector<EdgePath> tracks;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    tracks.push_back(random_track(rng, g, vertex_at(i), sigma[i], walk));
  }
  CoherentLabeling l(g, bfs_spanning_tree(g, vertex_at(0)));
  return LiftedVertexMap(l, map_from_tracks(std::move(tracks), g.edge_count()));
}

inline LiftedVertexMap random_map(Rng& rng, int max_vertices, int max_edges, int walk) {
  const Graph g = random_graph(rng, max_vertices, max_edges);
  return random_map(rng, g, random_permutation(rng, g.vertex_count()), walk);
}

// ---------------------------------------------------------------- pointwise linearization

/// A point of the cover: the lift prefix * E~ at coordinate t, kept as strings.
struct SPoint {
  std::string prefix;
  std::size_t edge = 0;
  Rational t{0};
};

/// Independent evaluation of the lifted linearization on points: the image
/// path of an edge is recomputed from the tracks, labels are accumulated as
/// strings and the point is located by its position along the path. Images
/// are never empty since sigma is a permutation.
class PointwiseLinearization {
 public:
  explicit PointwiseLinearization(const LiftedVertexMap& lm) : g_(lm.graph()) {
    const CoherentLabeling& l = lm.labeling();
    for (std::size_t e = 0; e < g_.edge_count(); ++e) theta_.push_back(to_str(l.theta(edge_at(e))));
    for (std::size_t v = 0; v < g_.vertex_count(); ++v) {
      const EdgePath& tr = lm.track(vertex_at(v));
      std::string w;
      for (const EdgeStep& s : tr.steps) w += step_word(s);
      tv_.push_back(str_reduce(w));
      tracks_.push_back(tr);
    }
    for (std::size_t e = 0; e < g_.edge_count(); ++e) {
      const EdgeRecord& r = g_.edge(edge_at(e));
      std::vector<EdgeStep> steps = reverse_path(g_, tracks_[idx(r.from)]).steps;
      steps.push_back({edge_at(e), Orientation::Forward});
      const auto& t2 = tracks_[idx(r.to)].steps;
      steps.insert(steps.end(), t2.begin(), t2.end());
      images_.push_back(reduce_steps(steps));
    }
    shift_ = to_str(lm.shift());
  }

  const std::vector<EdgeStep>& image(std::size_t e) const { return images_[e]; }

  SPoint apply(const SPoint& x) const {
    const EdgeRecord& r = g_.edge(edge_at(x.edge));
    const auto& img = images_[x.edge];
    std::string label = str_reduce(shift_ + x.prefix + tv_[idx(r.from)]);
    const std::size_t len = img.size();
    Rational pos = x.t * len;
    const BigInt whole = boost::multiprecision::numerator(pos) / boost::multiprecision::denominator(pos);
    std::size_t j = static_cast<std::size_t>(whole.convert_to<long long>());
    if (j == len) j = len - 1;
    const Rational s = pos - j;
    for (std::size_t i = 0; i < j; ++i) label = str_reduce(label + step_word(img[i]));
    const EdgeStep st = img[j];
    if (st.orientation == Orientation::Forward) return {label, idx(st.edge), s};
    return {str_reduce(label + str_invert(theta_[idx(st.edge)])), idx(st.edge), 1 - s};
  }

  /// Points are equal in the cover; edge endpoints compare as vertices.
  bool same(const SPoint& a, const SPoint& b) const {
    const auto va = as_vertex(a);
    const auto vb = as_vertex(b);
    if (va || vb) return va && vb && *va == *vb;
    return a.prefix == b.prefix && a.edge == b.edge && a.t == b.t;
  }

  /// The deck translate word * x.
  SPoint translate(const std::string& word, const SPoint& x) const {
    return {str_reduce(word + x.prefix), x.edge, x.t};
  }

 private:
  std::string step_word(const EdgeStep& s) const {
    const std::string& th = theta_[idx(s.edge)];
    return s.orientation == Orientation::Forward ? th : str_invert(th);
  }

  std::vector<EdgeStep> reduce_steps(const std::vector<EdgeStep>& steps) const {
    std::vector<EdgeStep> out;
    for (const EdgeStep& s : steps) {
      if (!out.empty() && out.back().edge == s.edge && out.back().orientation != s.orientation) {
        out.pop_back();
      } else {
        out.push_back(s);
      }
    }
    return out;
  }

  std::optional<std::pair<std::string, std::size_t>> as_vertex(const SPoint& p) const {
    const EdgeRecord& r = g_.edge(edge_at(p.edge));
    if (p.t == 0) return std::pair{p.prefix, idx(r.from)};
    if (p.t == 1) return std::pair{str_reduce(p.prefix + theta_[p.edge]), idx(r.to)};
    return std::nullopt;
  }

  const Graph& g_;
  std::vector<std::string> theta_;
  std::vector<std::string> tv_;
  std::vector<EdgePath> tracks_;
  std::vector<std::vector<EdgeStep>> images_;
  std::string shift_;
};

/// The record's point is returned to word * x after `period` steps of the
/// independent linearization.
inline bool record_realized(const LiftedVertexMap& lm, const PeriodicPointRecord& r) {
  if (r.kind == PointKind::Degenerate) {
    const Rational mid = (r.lo + r.hi) / 2;
    PeriodicPointRecord c = r;
    c.kind = PointKind::Interior;
    c.t = mid;
    return record_realized(lm, c);
  }
  const PointwiseLinearization pl(lm);
  SPoint x{"", idx(r.edge), r.t};
  SPoint y = x;
  for (std::int64_t i = 0; i < r.period; ++i) y = pl.apply(y);
  return pl.same(y, pl.translate(to_str(r.word), x));
}

}  // namespace rotelt::testing
