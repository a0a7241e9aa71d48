#include <doctest.h>

#include "support/support.hpp"

using namespace rotelt;
using namespace rotelt::testing;

namespace {

struct Fix {
  SpecFile spec;
  CoherentLabeling l;
  explicit Fix(const std::string& name) : spec(load_fixture(name)), l(labeling_of(spec)) {}
  EdgeId e(const std::string& n) const { return *l.graph().find_edge(n); }
  VertexId v(const std::string& n) const { return *l.graph().find_vertex(n); }
  Word w(const std::string& s) const { return l.alphabet().parse(s); }
  EdgePath path(const std::string& from, const std::string& s) const { return parse_path(l.graph(), v(from), s); }
  LiftedVertex lv(const std::string& label, const std::string& vert) const { return {w(label), v(vert)}; }
};

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("graph rejects looped edges and disconnection") {
  CHECK_THROWS_AS(Graph({"V1"}, {{"E1", vertex_at(0), vertex_at(0)}}), SpecError);
  CHECK_THROWS_AS(Graph({"V1", "V2", "V3"}, {{"E1", vertex_at(0), vertex_at(1)}}), SpecError);
  CHECK_THROWS_AS(Graph({"V1", "V1"}, {{"E1", vertex_at(0), vertex_at(1)}}), SpecError);
}

TEST_CASE("house labeling") {
  const Fix f("house.spec");
  CHECK(f.l.graph().vertex_count() == 5);
  CHECK(f.l.graph().edge_count() == 6);
  CHECK(f.l.theta(f.e("E2")) == f.w("a"));
  CHECK(f.l.theta(f.e("E6")) == f.w("b"));
  for (const char* n : {"E1", "E3", "E4", "E5"}) CHECK(f.l.theta(f.e(n)).empty());
  CHECK(format_path(f.l.graph(), f.l.generator_loop(0)) == "E2 ~E3 E1");
  CHECK(format_path(f.l.graph(), f.l.generator_loop(1)) == "~E1 E3 E4 E5 E6 E1");
}

TEST_CASE("triangle labeling and relabeling") {
  const Fix f("triangle.spec");
  CHECK(f.l.theta(f.e("E3")) == f.w("a"));
  CHECK(format_path(f.l.graph(), word_to_loop(f.l, f.w("a"))) == "E1 E2 E3 ~E1");
  const SpanningTree t = spanning_tree_containing(f.l.graph(), f.e("E3"), f.v("V1"));
  CHECK(t.edges() == std::vector<EdgeId>{f.e("E1"), f.e("E3")});
  const SpanningTree h = spanning_tree_containing(Fix("house.spec").l.graph(), f.e("E3"), f.v("V1"));
  CHECK(h.contains(f.e("E3")));
  const Graph single({"V1", "V2"}, {{"E1", vertex_at(0), vertex_at(1)}});
  CHECK(spanning_tree_containing(single, edge_at(0), vertex_at(0)).edges() == std::vector<EdgeId>{edge_at(0)});
}

TEST_CASE("bfs tree is the default and deterministic") {
  const Fix f("triangle.spec");
  CHECK(bfs_spanning_tree(f.l.graph(), f.v("V1")) == f.l.tree());
  CHECK_THROWS_AS(make_spanning_tree(f.l.graph(), f.v("V1"), {f.e("E2"), f.e("E3")}), SpecError);
}

TEST_CASE("lift_path") {
  const Fix f("house.spec");
  const LiftedPath p = lift_path(f.l, f.lv("", "V1"), f.path("V1", "E2"));
  REQUIRE(p.steps.size() == 1);
  CHECK(p.steps[0] == LiftedStep{Word{}, f.e("E2"), Orientation::Forward});
  CHECK(p.end == f.lv("a", "V2"));
  CHECK(lift_path(f.l, f.lv("", "V1"), f.path("V1", "E2 ~E3 E1")).end == f.lv("a", "V1"));
  const LiftedPath tree_only = lift_path(f.l, f.lv("b", "V2"), f.path("V2", "E4 E5"));
  for (const auto& s : tree_only.steps) CHECK(s.prefix == f.w("b"));
  CHECK(tree_only.end == f.lv("b", "V4"));
}

TEST_CASE("contract") {
  const Fix f("house.spec");
  const LiftedPath e3 = lift_path(f.l, f.lv("", "V5"), f.path("V5", "E3"));
  CHECK(contract(concat(e3, reverse(e3))).empty());
  const LiftedPath back = reverse(e3);
  const LiftedPath p = concat(concat(back, e3), back);
  CHECK(contract(p) == back);
  const LiftedPath reduced = lift_path(f.l, f.lv("", "V1"), f.path("V1", "E2 E4 E5"));
  CHECK(contract(reduced) == reduced);
}

TEST_CASE("loop_word and word_to_loop") {
  const Fix f("house.spec");
  CHECK(loop_word(f.l, f.path("V1", "E2 ~E3 E1")) == f.w("a"));
  CHECK(loop_word(f.l, f.path("V1", "~E1 E3 E4 E5 E6 E1")) == f.w("b"));
  CHECK(loop_word(f.l, f.path("V1", "~E1 E1")).empty());
  CHECK(format_path(f.l.graph(), word_to_loop(f.l, f.w("a"))) == "E2 ~E3 E1");
  CHECK(word_to_loop(f.l, Word{}).empty());
}

TEST_CASE("geodesic") {
  const Fix f("triangle.spec");
  const LiftedVertex x = f.lv("", "V1");
  CHECK(geodesic(f.l, x, x).empty());
  const LiftedPath g = geodesic(f.l, x, f.lv("a", "V1"));
  CHECK(format_lifted_path(f.l, g) == "E1 E2 E3 a:~E1");
  const LiftedPath t = geodesic(f.l, f.lv("", "V1"), f.lv("", "V3"));
  CHECK(format_lifted_path(f.l, t) == "E1 E2");
}

TEST_CASE("deck action prefixes on the left") {
  const Fix f("house.spec");
  CHECK(deck(f.w("b"), f.lv("a", "V2")) == f.lv("ba", "V2"));
  CHECK(deck(Word{}, f.lv("a", "V2")) == f.lv("a", "V2"));
  CHECK(deck(f.w("~a"), f.lv("a", "V3")) == f.lv("", "V3"));
  CHECK(format_vertex(f.l, f.lv("~ab", "V1")) == "~abV1");
  CHECK(format_step(f.l, LiftedStep{f.w("a"), f.e("E1"), Orientation::Backward}) == "a:~E1");
}

TEST_CASE("coherent labeling contract, exhaustive on fixtures") {
  for (const char* name : {"house.spec", "triangle.spec", "circle.spec"}) {
    const Fix f(name);
    const Graph& g = f.l.graph();
    std::vector<Word> labels{Word{}};
    for (std::uint32_t a = 0; a < f.l.generator_count(); ++a) {
      labels.push_back(Word::generator(a));
      labels.push_back(invert(Word::generator(a)));
    }
    for (const Word& u : labels) {
      for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const EdgeId e = edge_at(i);
        const LiftedPath p = lift_path(f.l, {u, g.edge(e).from}, EdgePath{g.edge(e).from, {{e, Orientation::Forward}}});
        CHECK(p.end == LiftedVertex{concat_reduce(u, f.l.theta(e)), g.edge(e).to});
      }
    }
    std::size_t generators = 0;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      const EdgeId e = edge_at(i);
      CHECK(f.l.theta(e).empty() == f.l.tree().contains(e));
      if (const auto gen = f.l.generator_of(e)) {
        CHECK(f.l.generator_edge(*gen) == e);
        ++generators;
      }
    }
    CHECK(generators == g.rank());
  }
}

TEST_CASE("property: loop_word inverts word_to_loop on random graphs") {
  Rng rng(21);
  int checked = 0;
  for (int gi = 0; gi < 25; ++gi) {
    const Graph g = random_graph(rng, 6, 8);
    const CoherentLabeling l(g, bfs_spanning_tree(g, vertex_at(0)));
    if (l.generator_count() == 0) continue;
    for (int i = 0; i < 20; ++i) {
      const Word w = random_word(rng, static_cast<int>(l.generator_count()), 12);
      const EdgePath loop = word_to_loop(l, w);
      CHECK(reduce_path(loop) == loop);
      CHECK(loop_word(l, loop) == w);
      ++checked;
    }
  }
  CHECK(checked >= 400);
}

namespace {

LiftedPath random_lifted_path(Rng& rng, const CoherentLabeling& l, int len) {
  const Graph& g = l.graph();
  const Word start_label = random_word(rng, static_cast<int>(std::max<std::size_t>(1, l.generator_count())),
                                       l.generator_count() ? 3 : 0);
  const VertexId v = vertex_at(static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(g.vertex_count()) - 1)));
  EdgePath p{v, {}};
  VertexId at = v;
  for (int i = 0; i < len; ++i) {
    const auto& inc = g.incident(at);
    const EdgeId e = inc[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(inc.size()) - 1))];
    const EdgeStep s{e, g.edge(e).from == at ? Orientation::Forward : Orientation::Backward};
    p.steps.push_back(s);
    at = g.step_end(s);
  }
  return lift_path(l, {start_label, v}, p);
}

}  // namespace

TEST_CASE("property: contract, geodesic and deck on random lifted paths") {
  Rng rng(22);
  for (int gi = 0; gi < 20; ++gi) {
    const Graph g = random_graph(rng, 6, 8);
    const CoherentLabeling l(g, bfs_spanning_tree(g, vertex_at(0)));
    for (int i = 0; i < 15; ++i) {
      const LiftedPath p = random_lifted_path(rng, l, uniform(rng, 0, 10));
      const LiftedPath c = contract(p);
      CHECK(contract(c) == c);
      CHECK(c.start == p.start);
      CHECK(c.end == p.end);
      CHECK(c == geodesic(l, p.start, p.end));
      const LiftedPath back = geodesic(l, p.end, p.start);
      CHECK(back == reverse(c));
      const Word gamma = random_word(rng, static_cast<int>(std::max<std::size_t>(1, l.generator_count())),
                                     l.generator_count() ? 3 : 0);
      CHECK(contract(deck(gamma, p)) == deck(gamma, c));
      CHECK(lift_path(l, deck(gamma, p.start), project(p)) == deck(gamma, p));
    }
  }
}

}
