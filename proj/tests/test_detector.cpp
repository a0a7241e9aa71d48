#include <doctest.h>

#include "support/support.hpp"

using namespace rotelt;
using namespace rotelt::testing;

namespace {

struct Fix {
  LiftedVertexMap lm;
  explicit Fix(const std::string& name) : lm(fixture_map(name)) {}
  Fix(const std::string& name, const std::string& reroot)
      : lm(analysis_map_for_edge(fixture_map(name), *fixture_map(name).graph().find_edge(reroot))) {}
  const CoherentLabeling& l() const { return lm.labeling(); }
  const Graph& g() const { return lm.graph(); }
  EdgeId e(const std::string& n) const { return *g().find_edge(n); }
  VertexId v(const std::string& n) const { return *g().find_vertex(n); }
  Word w(const std::string& s) const { return l().alphabet().parse(s); }
  RotationElement rot(const std::string& s) const { return parse_rotation(s, l().alphabet()); }
  std::string fmt(const LiftedPath& p) const { return format_lifted_path(l(), p); }
};

std::set<std::string> element_strings(const Fix& f, const std::vector<Detection>& ds) {
  std::set<std::string> out;
  for (const auto& d : ds) out.insert(format(d.element, f.l().alphabet()));
  return out;
}

bool has_edge_lift(const LiftedPath& p, EdgeId e) {
  return std::any_of(p.steps.begin(), p.steps.end(),
                     [&](const LiftedStep& s) { return s.edge == e && s.prefix.empty(); });
}

}  // namespace

TEST_SUITE("detector") {

TEST_CASE("p_path") {
  const Fix f("triangle.spec");
  CHECK(f.fmt(p_path(f.lm, f.v("V1"), f.w("a"), 1)) == "E1 E2 E3 a:~E1");
  CHECK(p_path(f.lm, f.v("V2"), Word{}, 3).empty());
  CHECK(p_path(f.lm, f.v("V1"), f.w("a"), 0).empty());
  const LiftedPath one = p_path(f.lm, f.v("V1"), f.w("a"), 1);
  CHECK(p_path(f.lm, f.v("V1"), f.w("a"), 2) == contract(concat(one, deck(f.w("a"), one))));
  CHECK(p_path(f.lm, f.v("V1"), f.w("a"), -1) == reverse(one));
}

TEST_CASE("begins_with") {
  const Fix f("triangle.spec");
  CHECK(begins_with(p_path(f.lm, f.v("V1"), f.w("a"), 1), f.e("E1")));
  CHECK_FALSE(begins_with(LiftedPath{}, f.e("E1")));
  const LiftedPath shifted = deck(f.w("a"), p_path(f.lm, f.v("V1"), f.w("a"), 1));
  CHECK_FALSE(begins_with(shifted, f.e("E1")));
}

TEST_CASE("belongs") {
  const Fix h("house.spec");
  for (const char* n : {"E1", "E2", "E3"}) CHECK(belongs(h.l(), h.e(n), h.w("a")));
  for (const char* n : {"E3", "E4", "E5", "E6"}) CHECK(belongs(h.l(), h.e(n), h.w("b")));
  for (const char* n : {"E4", "E5", "E6"}) CHECK_FALSE(belongs(h.l(), h.e(n), h.w("a")));
  const Fix t("triangle.spec");
  CHECK(belongs(t.l(), t.e("E2"), t.w("a")));
  CHECK(belongs(t.l(), t.e("E3"), t.w("a")));
  CHECK_FALSE(belongs(t.l(), t.e("E1"), t.w("a")));
  CHECK_FALSE(belongs(t.l(), t.e("E2"), Word{}));
  // conjugates and powers belong along the same edges
  CHECK(belongs(h.l(), h.e("E2"), h.w("ba~b")));
  CHECK(belongs(h.l(), h.e("E6"), h.w("abab")));
}

TEST_CASE("gamma_words") {
  const Fix f("triangle.spec", "E3");
  const Word a = rotation_word(f.lm, f.v("V3"));
  CHECK(a == f.w("a"));
  CHECK(begins_with(p_path(f.lm, f.v("V3"), a, 1), f.e("E3")));
  const auto g1 = gamma_words(f.lm, f.e("E3"), f.v("V3"), a);
  CHECK(std::find(g1.begin(), g1.end(), Word{}) != g1.end());
  CHECK(g1.size() == 1);
  // the square crosses E3 twice and both occurrences satisfy the window
  CHECK(gamma_words(f.lm, f.e("E3"), f.v("V3"), f.w("aa")) == std::vector<Word>{Word{}, f.w("a")});
  CHECK_THROWS_AS(gamma_words(f.lm, f.e("E1"), f.v("V1"), a), std::invalid_argument);
}

TEST_CASE("classify_edge on the fixtures") {
  const Fix h("house.spec");
  const EdgeClassification c3 = classify_edge(h.lm, h.e("E3"));
  CHECK(c3.decision.regime == Regime::FpNeither);
  CHECK(c3.decision.edge_case == EdgeCase::FpNeither);
  CHECK_FALSE(c3.rerooted);

  const Fix t("triangle.spec");
  const EdgeClassification c1 = classify_edge(t.lm, t.e("E1"));
  CHECK(c1.decision.regime == Regime::OneBegins);
  CHECK(c1.decision.edge_case == EdgeCase::NoGuarantee);
  CHECK(c1.flags.begins1);
  CHECK_FALSE(c1.flags.begins2);
  CHECK(to_string(c1.decision.regime) + "/" + to_string(c1.decision.edge_case) == "OneBegins/NoGuarantee");

  const EdgeClassification e3 = classify_edge(t.lm, t.e("E3"));
  CHECK(e3.rerooted);
  CHECK(e3.decision.edge_case == EdgeCase::CommonRootInterval);
  REQUIRE(e3.common_root.has_value());
  CHECK(e3.common_root->root == e3.map.labeling().alphabet().parse("a"));
  CHECK(Rational(BigInt(e3.common_root->k1), BigInt(e3.ends.m)) == make_rational(1, 2));
  CHECK(e3.common_root->k2 == 0);
  CHECK(e3.map.graph().vertex_name(e3.ends.v1) == "V3");

  const Fix s("spread.spec");
  const EdgeClassification sp = classify_edge(s.lm, s.e("E1"));
  CHECK(sp.decision.regime == Regime::FpBoth);
  CHECK(sp.decision.edge_case == EdgeCase::BelongsBothBothBegin);
}

TEST_CASE("decide_case is total and follows the table") {
  for (int bits = 0; bits < 64; ++bits) {
    CaseFlags f;
    f.begins1 = bits & 1;
    f.begins2 = bits & 2;
    f.belongs1 = bits & 4;
    f.belongs2 = bits & 8;
    f.common_root = bits & 16;
    f.belongs_root = bits & 32;
    const CaseDecision d = decide_case(f);
    if (f.begins1 == f.begins2) {
      CHECK(d.regime == (f.begins1 ? Regime::FpBoth : Regime::FpNeither));
      if (f.belongs1 && f.belongs2) {
        CHECK(d.edge_case == (f.begins1 ? EdgeCase::BelongsBothBothBegin : EdgeCase::BelongsBothNeitherBegin));
      } else if (f.belongs1 != f.belongs2) {
        CHECK(d.edge_case == EdgeCase::BelongsOne);
        CHECK(d.side == (f.belongs1 ? 1 : 2));
      } else {
        CHECK(d.edge_case == (f.begins1 ? EdgeCase::FpBoth : EdgeCase::FpNeither));
      }
    } else {
      CHECK(d.regime == Regime::OneBegins);
      if (f.common_root && f.belongs_root) {
        CHECK(d.edge_case == EdgeCase::CommonRootInterval);
      } else if (f.belongs1 && f.belongs2) {
        CHECK(d.edge_case == EdgeCase::BelongsBothNotPowers);
      } else if (f.belongs1 || f.belongs2) {
        CHECK(d.edge_case == EdgeCase::BelongsOne);
      } else {
        CHECK(d.edge_case == EdgeCase::NoGuarantee);
      }
    }
  }
}

TEST_CASE("predicted_elements") {
  const Fix h("house.spec");
  const PredictionSet fp = predicted_elements(classify_edge(h.lm, h.e("E3")), 4);
  REQUIRE(fp.predictions.size() == 1);
  CHECK(fp.predictions[0].element.is_identity());
  CHECK(fp.predictions[0].period_witness == 1);

  const Fix t("triangle.spec");
  const EdgeClassification c = classify_edge(t.lm, t.e("E3"));
  const PredictionSet ps = predicted_elements(c, 4);
  std::set<std::string> got;
  for (const auto& p : ps.predictions) got.insert(format(p.element, c.map.labeling().alphabet()));
  CHECK(got == std::set<std::string>{"a^1/3", "a^1/4"});
  REQUIRE(ps.families.size() == 1);
  CHECK(ps.families[0].lower == 0);
  CHECK(ps.families[0].upper == make_rational(1, 2));
  CHECK_FALSE(ps.families[0].lower_closed);
  for (const auto& p : ps.predictions) {
    CHECK(p.p > 0);
    CHECK(normalize_rot(p.word, p.period_witness) == p.element);
  }

  const Fix s("spread.spec");
  const PredictionSet both = predicted_elements(classify_edge(s.lm, s.e("E1")), 3);
  std::set<std::string> els;
  for (const auto& p : both.predictions) {
    els.insert(format(p.element, s.l().alphabet()));
    if (p.source == "belongs-both-both-begin") CHECK((!p.gamma || p.gamma->empty()));
  }
  CHECK(els == std::set<std::string>{"1", "a^1/3", "a^1/2", "a^2/3", "~a^1/3", "~a^1/2", "~a^2/3"});

  CHECK(predicted_elements(classify_edge(t.lm, t.e("E1")), 4).predictions.empty());
}

TEST_CASE("detect_in_contraction") {
  const Fix t("triangle.spec");
  for (std::int64_t k = 1; k <= 3; ++k) {
    const auto ds = detect_in_contraction(t.lm, t.e("E1"), k);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].gamma == power(t.w("a"), k));
    // the reversed P1 crosses the last edge a^k ~E1 of P1 forwards
    CHECK(ds[0].orientation == Orientation::Forward);
    CHECK(element_strings(t, ds) == std::set<std::string>{"a^1/2"});
  }
  const Fix h("house.spec");
  const auto ds = detect_in_contraction(h.lm, h.e("E3"), 1);
  CHECK(std::any_of(ds.begin(), ds.end(), [](const Detection& d) {
    return d.gamma.empty() && d.orientation == Orientation::Forward && d.element.is_identity();
  }));

  std::vector<EdgePath> tracks;
  for (std::size_t i = 0; i < h.g().vertex_count(); ++i) tracks.push_back({vertex_at(i), {}});
  const LiftedVertexMap id(h.l(), map_from_tracks(tracks, h.g().edge_count()));
  const auto di = detect_in_contraction(id, h.e("E1"), 1);
  REQUIRE(di.size() == 1);
  CHECK(di[0].gamma.empty());
  CHECK(di[0].element.is_identity());
}

TEST_CASE("detector requires the canonical lift") {
  const Fix t("triangle.spec");
  CHECK_THROWS_AS(classify_edge(t.lm.with_shift(t.w("a")), t.e("E1")), std::invalid_argument);
  CHECK_THROWS_AS(contraction_witness(t.lm, t.e("E3"), 1), std::invalid_argument);
}

namespace {

void check_contraction_equality(const LiftedVertexMap& lm, std::int64_t kmax) {
  for (std::size_t i = 0; i < lm.graph().edge_count(); ++i) {
    const LiftedVertexMap am = analysis_map_for_edge(lm, edge_at(i));
    const EndpointData d = endpoint_data(am, edge_at(i));
    for (std::int64_t k = 1; k <= kmax; ++k) {
      const auto n = static_cast<std::size_t>(k * d.m * d.n);
      const LiftedPath it = iterate_edge_lift(am, edge_at(i), n, IterationMode::Branchwise);
      CHECK(contract(it) == contraction_witness(am, edge_at(i), k));
    }
  }
}

}  // namespace

TEST_CASE("contraction equality on the fixtures") {
  for (const char* name : {"house.spec", "triangle.spec", "circle.spec", "spread.spec"}) {
    check_contraction_equality(fixture_map(name), 3);
  }
}

TEST_CASE("property: contraction equality on random maps") {
  Rng rng(41);
  for (int i = 0; i < 40; ++i) {
    const LiftedVertexMap lm = random_map(rng, 5, 6, 2);
    try {
      check_contraction_equality(lm, 1);
    } catch (const ResourceError&) {
    }
  }
}

TEST_CASE("property: fixed-point cases keep a lift of the edge in the contraction") {
  Rng rng(42);
  int seen = 0;
  for (int i = 0; i < 150; ++i) {
    const LiftedVertexMap lm = random_map(rng, 5, 7, 3);
    for (std::size_t j = 0; j < lm.graph().edge_count(); ++j) {
      const EdgeClassification c = classify_edge(lm, edge_at(j));
      if (c.decision.regime == Regime::OneBegins) continue;
      ++seen;
      CHECK(has_edge_lift(contraction_witness(c.map, edge_at(j), 1), edge_at(j)));
      const auto period = static_cast<std::size_t>(c.ends.m * c.ends.n);
      if (period > 6) continue;
      try {
        const auto rs = enumerate_periodic(c.map, edge_at(j), period, 200000);
        CHECK(std::any_of(rs.begin(), rs.end(), [](const PeriodicPointRecord& r) { return r.element.is_identity(); }));
      } catch (const ResourceError&) {
      }
    }
  }
  CHECK(seen > 50);
}

TEST_CASE("property: gamma window and the begins lemma") {
  Rng rng(43);
  int windows = 0;
  for (int i = 0; i < 120; ++i) {
    const LiftedVertexMap lm = random_map(rng, 5, 7, 3);
    for (std::size_t j = 0; j < lm.graph().edge_count(); ++j) {
      const EdgeId e = edge_at(j);
      const EdgeClassification c = classify_edge(lm, e);
      const LiftedVertexMap& am = c.map;
      const std::pair<VertexId, Word> sides[] = {{c.ends.v1, c.ends.w1}, {c.ends.v2, c.ends.w2}};
      const bool begins[] = {c.flags.begins1, c.flags.begins2};
      for (int s = 0; s < 2; ++s) {
        const auto& [v, w] = sides[s];
        if (!belongs(am.labeling(), e, w)) continue;
        const auto gammas = gamma_words(am, e, v, w);
        if (begins[s]) CHECK(std::find(gammas.begin(), gammas.end(), Word{}) != gammas.end());
        for (const Word& gamma : gammas) {
          for (std::int64_t k = 1; k <= 3; ++k) {
            std::set<Word> prefixes;
            for (const auto& st : p_path(am, v, w, k).steps) {
              if (st.edge == e) prefixes.insert(st.prefix);
            }
            for (std::int64_t ii = -k - 1; ii <= 2 * k + 1; ++ii) {
              const Word target = concat_reduce(power(w, ii), gamma);
              CHECK((prefixes.count(target) == 1) == (ii >= 0 && ii < k));
              ++windows;
            }
          }
        }
      }
    }
  }
  CHECK(windows > 100);
}

TEST_CASE("detection soundness on the fixtures") {
  for (const char* name : {"house.spec", "triangle.spec", "circle.spec", "spread.spec"}) {
    const LiftedVertexMap lm = fixture_map(name);
    for (std::size_t j = 0; j < lm.graph().edge_count(); ++j) {
      const LiftedVertexMap am = analysis_map_for_edge(lm, edge_at(j));
      const EndpointData d = endpoint_data(am, edge_at(j));
      for (std::int64_t k = 1; k <= 2; ++k) {
        const auto period = static_cast<std::size_t>(k * d.m * d.n);
        const auto records = enumerate_periodic(am, edge_at(j), period);
        for (const Detection& det : detect_in_contraction(am, edge_at(j), k)) {
          CHECK(std::any_of(records.begin(), records.end(), [&](const PeriodicPointRecord& r) {
            return conjugacy_equal(r.element, det.element);
          }));
        }
      }
    }
  }
}

}
