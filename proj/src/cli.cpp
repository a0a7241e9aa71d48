#include "rotelt/cli.hpp"

#include "rotelt/errors.hpp"
#include "rotelt/oracle.hpp"
#include "rotelt/spec_file.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace rotelt {

using Json = nlohmann::ordered_json;

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string kind_name(SpecErrorKind k) {
  switch (k) {
    case SpecErrorKind::Syntax: return "syntax error";
    case SpecErrorKind::UnknownIdentifier: return "unknown identifier";
    case SpecErrorKind::Invariant: return "invariant violation";
  }
  return "error";
}

// ---------------------------------------------------------------- formatting

struct Fmt {
  const LiftedVertexMap* lm = nullptr;
  const CoherentLabeling* l = nullptr;

  explicit Fmt(const CoherentLabeling& lab) : l(&lab) {}
  explicit Fmt(const LiftedVertexMap& m) : lm(&m), l(&m.labeling()) {}

  const Graph& g() const { return l->graph(); }
  std::string word(const Word& w) const { return l->alphabet().format(w); }
  std::string rot(const RotationElement& r) const { return format(r, l->alphabet()); }
  std::string vertex(VertexId v) const { return g().vertex_name(v); }
  std::string edge(EdgeId e) const { return g().edge_name(e); }
  std::string path(const EdgePath& p) const { return p.empty() ? "" : format_path(g(), p); }
};

std::string orientation_name(Orientation o) { return o == Orientation::Forward ? "forward" : "backward"; }

Json labeling_json(const CoherentLabeling& l) {
  const Fmt f(l);
  Json j;
  j["basepoint"] = f.vertex(l.root());
  Json tree = Json::array();
  for (EdgeId e : l.tree().edges()) tree.push_back(f.edge(e));
  j["tree"] = tree;
  Json gens = Json::array();
  for (std::uint32_t g = 0; g < l.generator_count(); ++g) {
    gens.push_back({{"name", l.alphabet().name(g)},
                    {"edge", f.edge(l.generator_edge(g))},
                    {"loop", f.path(l.generator_loop(g))}});
  }
  j["generators"] = gens;
  Json theta = Json::object();
  for (std::size_t i = 0; i < l.graph().edge_count(); ++i) {
    theta[f.edge(edge_at(i))] = f.word(l.theta(edge_at(i)));
  }
  j["theta"] = theta;
  return j;
}

void print_labeling(std::ostream& out, const CoherentLabeling& l) {
  const Fmt f(l);
  out << "basepoint " << f.vertex(l.root()) << "\ntree";
  for (EdgeId e : l.tree().edges()) out << ' ' << f.edge(e);
  out << '\n';
  for (std::uint32_t g = 0; g < l.generator_count(); ++g) {
    out << "generator " << l.alphabet().name(g) << " = " << f.edge(l.generator_edge(g)) << "  loop "
        << f.path(l.generator_loop(g)) << '\n';
  }
  for (std::size_t i = 0; i < l.graph().edge_count(); ++i) {
    out << "theta " << f.edge(edge_at(i)) << " = " << f.word(l.theta(edge_at(i))) << '\n';
  }
}

std::string location(const Fmt& f, const PeriodicPointRecord& r) {
  switch (r.kind) {
    case PointKind::Interior: return to_string(r.t);
    case PointKind::VertexEnd: return f.vertex(*r.vertex);
    case PointKind::Degenerate: return "[" + to_string(r.lo) + ", " + to_string(r.hi) + "]";
  }
  return "?";
}

Json record_json(const Fmt& f, const PeriodicPointRecord& r) {
  Json j;
  j["edge"] = f.edge(r.edge);
  j["kind"] = to_string(r.kind);
  if (r.kind == PointKind::Degenerate) {
    j["location"] = Json::array({to_fraction_string(r.lo), to_fraction_string(r.hi)});
  } else if (r.kind == PointKind::VertexEnd) {
    j["location"] = f.vertex(*r.vertex);
  } else {
    j["location"] = to_fraction_string(r.t);
  }
  j["t"] = to_fraction_string(r.t);
  j["branch"] = Json::array({to_fraction_string(r.lo), to_fraction_string(r.hi)});
  j["period"] = r.period;
  j["minimal_period"] = r.minimal_period;
  j["rotation_word"] = f.word(r.word);
  j["element"] = f.rot(r.element);
  j["orientation"] = orientation_name(r.orientation);
  j["slope"] = to_string(r.slope);
  j["itinerary"] = r.itinerary;
  return j;
}

void print_record(std::ostream& out, const Fmt& f, const PeriodicPointRecord& r) {
  out << "  " << to_string(r.kind) << ' ' << location(f, r) << "  period " << r.period
      << " (minimal " << r.minimal_period << ")  word " << f.word(r.word) << "  element "
      << f.rot(r.element) << "  slope " << to_string(r.slope) << '\n';
}

Json classification_json(const EdgeClassification& c) {
  const Fmt f(c.map);
  const EndpointData& d = c.ends;
  Json j;
  j["edge"] = f.edge(c.edge);
  j["rerooted"] = c.rerooted;
  j["v1"] = f.vertex(d.v1);
  j["v2"] = f.vertex(d.v2);
  j["m"] = d.m;
  j["n"] = d.n;
  j["w1"] = f.word(d.w1);
  j["w2"] = f.word(d.w2);
  j["rho1"] = f.rot(normalize_rot(d.w1, d.m));
  j["rho2"] = f.rot(normalize_rot(d.w2, d.n));
  j["begins1"] = c.flags.begins1;
  j["begins2"] = c.flags.begins2;
  j["belongs1"] = c.flags.belongs1;
  j["belongs2"] = c.flags.belongs2;
  if (c.common_root) {
    j["common_root"] = {{"root", f.word(c.common_root->root)},
                        {"k1", c.common_root->k1},
                        {"k2", c.common_root->k2},
                        {"belongs", c.flags.belongs_root}};
    Rational e1(BigInt(c.common_root->k1), BigInt(d.m));
    Rational e2(BigInt(c.common_root->k2), BigInt(d.n));
    if (e2 < e1) std::swap(e1, e2);
    j["bounds"] = Json::array({to_string(e1), to_string(e2)});
  } else {
    j["common_root"] = nullptr;
  }
  j["regime"] = to_string(c.decision.regime);
  j["case"] = to_string(c.decision.edge_case);
  if (c.decision.side) j["side"] = c.decision.side;
  Json g1 = Json::array();
  for (const Word& w : c.gamma1) g1.push_back(f.word(w));
  Json g2 = Json::array();
  for (const Word& w : c.gamma2) g2.push_back(f.word(w));
  j["gamma1"] = g1;
  j["gamma2"] = g2;
  return j;
}

void print_classification(std::ostream& out, const EdgeClassification& c) {
  const Json j = classification_json(c);
  const Fmt f(c.map);
  out << "edge " << f.edge(c.edge) << ": " << f.vertex(c.ends.v1) << " -> " << f.vertex(c.ends.v2)
      << '\n';
  out << "  V1 period " << c.ends.m << "  word " << j["w1"].get<std::string>() << "  rho "
      << j["rho1"].get<std::string>() << '\n';
  out << "  V2 period " << c.ends.n << "  word " << j["w2"].get<std::string>() << "  rho "
      << j["rho2"].get<std::string>() << '\n';
  out << "  begins " << c.flags.begins1 << ' ' << c.flags.begins2 << "  belongs " << c.flags.belongs1
      << ' ' << c.flags.belongs2 << '\n';
  if (c.common_root) {
    out << "  common root " << f.word(c.common_root->root) << "  exponents " << c.common_root->k1
        << ' ' << c.common_root->k2 << "  bounds " << j["bounds"][0].get<std::string>() << ' '
        << j["bounds"][1].get<std::string>() << '\n';
  }
  out << "  case " << to_string(c.decision.regime) << '/' << to_string(c.decision.edge_case);
  if (c.decision.side) out << " (side " << c.decision.side << ')';
  out << '\n';
}

Json prediction_json(const Fmt& f, const Prediction& p) {
  Json j;
  j["element"] = f.rot(p.element);
  j["source"] = p.source;
  j["side"] = p.side;
  j["r"] = to_string(p.r);
  j["p"] = p.p;
  j["q"] = p.q;
  j["gamma"] = p.gamma ? Json(f.word(*p.gamma)) : Json(nullptr);
  j["word"] = f.word(p.word);
  j["period_witness"] = p.period_witness;
  return j;
}

Json family_json(const Fmt& f, const PredictionFamily& fam) {
  Json j;
  j["source"] = fam.source;
  j["side"] = fam.side;
  j["form"] = fam.element_form;
  j["base"] = f.word(fam.base);
  j["gamma"] = fam.gamma ? Json(f.word(*fam.gamma)) : Json(nullptr);
  j["lower"] = to_string(fam.lower);
  j["upper"] = to_string(fam.upper);
  j["lower_closed"] = fam.lower_closed;
  j["upper_closed"] = fam.upper_closed;
  return j;
}

std::string family_text(const Fmt& f, const PredictionFamily& fam) {
  std::ostringstream s;
  s << fam.source << ": " << fam.element_form << " with base " << f.word(fam.base);
  if (fam.gamma) s << ", gamma " << f.word(*fam.gamma);
  s << ", exponent in " << (fam.lower_closed ? '[' : '(') << to_string(fam.lower) << ", "
    << to_string(fam.upper) << (fam.upper_closed ? ']' : ')');
  return s.str();
}

Json check_json(const Fmt& f, const PredictionCheck& c) {
  Json j = prediction_json(f, c.prediction);
  j["status"] = to_string(c.status);
  j["witness"] = c.witness ? record_json(f, *c.witness) : Json(nullptr);
  return j;
}

// ---------------------------------------------------------------- context

struct Context {
  std::string command;
  std::string spec_path;
  std::string spec_text;
  std::string digest;
  SpecFile spec;
  bool json = false;
  std::ostream* out = nullptr;
};

Json envelope(const Context& ctx, Json results, std::vector<std::string> sources = {}) {
  Json j;
  j["command"] = ctx.command;
  j["inputs_digest"] = ctx.digest;
  j["results"] = std::move(results);
  j["sources"] = sources;
  return j;
}

void emit_json(const Context& ctx, const Json& j) { *ctx.out << j.dump(2) << '\n'; }

EdgeId edge_arg(const Graph& g, const std::string& name) {
  const auto e = g.find_edge(name);
  if (!e) throw UsageError("unknown edge '" + name + "'");
  return *e;
}

/// The analysis map for an edge, announcing any relabeling.
LiftedVertexMap edge_map(const Context& ctx, const LiftedVertexMap& lm, EdgeId e, Json& results) {
  LiftedVertexMap am = analysis_map_for_edge(lm, e);
  const bool rerooted = !lm.labeling().tree().contains(e);
  results["rerooted"] = rerooted;
  if (rerooted) {
    results["labeling"] = labeling_json(am.labeling());
    if (!ctx.json) {
      *ctx.out << "re-rooted over a spanning tree containing " << lm.graph().edge_name(e) << '\n';
      print_labeling(*ctx.out, am.labeling());
    }
  }
  return am;
}

std::vector<std::string> sources_of(const PredictionSet& ps) {
  std::vector<std::string> out;
  for (const auto& fam : ps.families) {
    if (std::find(out.begin(), out.end(), fam.source) == out.end()) out.push_back(fam.source);
  }
  return out;
}

// ---------------------------------------------------------------- commands

void cmd_validate(Context& ctx, bool echo) {
  const SpecFile& s = ctx.spec;
  const Graph& g = s.graph;
  Json r;
  r["graph"] = s.graph_name;
  r["vertices"] = g.vertex_count();
  r["edges"] = g.edge_count();
  r["rank"] = g.rank();
  if (s.map) {
    const LiftedVertexMap lm = lifted_map_of(s);
    const Fmt f(lm);
    r["map"] = s.map->name;
    Json sigma = Json::object();
    for (std::size_t i = 0; i < g.vertex_count(); ++i) sigma[f.vertex(vertex_at(i))] = f.vertex(lm.sigma(vertex_at(i)));
    r["sigma"] = sigma;
    Json images = Json::object();
    for (std::size_t i = 0; i < g.edge_count(); ++i) images[f.edge(edge_at(i))] = f.path(lm.image(edge_at(i)));
    r["images"] = images;
  } else {
    r["map"] = nullptr;
  }
  if (echo) r["echo"] = emit_spec(s);
  if (ctx.json) {
    emit_json(ctx, envelope(ctx, r));
    return;
  }
  if (echo) {
    *ctx.out << emit_spec(s);
    return;
  }
  *ctx.out << "valid: graph " << s.graph_name << " with " << g.vertex_count() << " vertices, "
           << g.edge_count() << " edges, rank " << g.rank() << '\n';
  if (s.map) {
    *ctx.out << "map " << s.map->name << '\n';
    for (const auto& [v, w] : r["sigma"].items()) *ctx.out << "  " << v << " -> " << w.get<std::string>() << '\n';
    for (const auto& [e, p] : r["images"].items()) *ctx.out << "  image " << e << " = " << p.get<std::string>() << '\n';
  }
}

void cmd_label(Context& ctx, const std::string& edge) {
  CoherentLabeling l = labeling_of(ctx.spec);
  if (!edge.empty()) {
    const EdgeId e = edge_arg(l.graph(), edge);
    if (!l.tree().contains(e)) l = CoherentLabeling(l.graph(), spanning_tree_containing(l.graph(), e, l.root()));
  }
  if (ctx.json) {
    emit_json(ctx, envelope(ctx, labeling_json(l)));
  } else {
    print_labeling(*ctx.out, l);
  }
}

void cmd_rotation(Context& ctx, const std::string& vertex) {
  const LiftedVertexMap lm = lifted_map_of(ctx.spec);
  const Fmt f(lm);
  const Graph& g = lm.graph();
  std::vector<VertexId> which;
  if (!vertex.empty()) {
    const auto v = g.find_vertex(vertex);
    if (!v) throw UsageError("unknown vertex '" + vertex + "'");
    which.push_back(*v);
  } else {
    for (std::size_t i = 0; i < g.vertex_count(); ++i) which.push_back(vertex_at(i));
  }
  Json r;
  Json verts = Json::array();
  for (VertexId v : which) {
    const std::size_t m = cycle_length(lm, v);
    verts.push_back({{"vertex", f.vertex(v)},
                     {"period", m},
                     {"track_word", f.word(lm.t(v))},
                     {"rotation_word", f.word(rotation_word(lm, v, m))},
                     {"element", f.rot(vertex_rotation(lm, v))}});
  }
  r["vertices"] = verts;

  Json orbits = Json::array();
  std::vector<bool> done(g.vertex_count(), false);
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    if (done[i]) continue;
    std::vector<VertexId> orbit;
    for (VertexId v = vertex_at(i);; v = lm.sigma(v)) {
      if (done[idx(v)]) break;
      done[idx(v)] = true;
      orbit.push_back(v);
    }
    if (!vertex.empty() && std::find(orbit.begin(), orbit.end(), which.front()) == orbit.end()) continue;
    std::vector<std::vector<VertexId>> classes;
    for (VertexId v : orbit) {
      const RotationElement rv = vertex_rotation(lm, v);
      auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& cls) {
        return conjugacy_equal(vertex_rotation(lm, cls.front()), rv);
      });
      if (it == classes.end()) {
        classes.push_back({v});
      } else {
        it->push_back(v);
      }
    }
    Json o;
    Json names = Json::array();
    for (VertexId v : orbit) names.push_back(f.vertex(v));
    o["vertices"] = names;
    o["conjugate"] = classes.size() == 1;
    Json cls_json = Json::array();
    for (const auto& cls : classes) {
      Json c = Json::array();
      for (VertexId v : cls) c.push_back(f.vertex(v));
      cls_json.push_back(c);
    }
    o["classes"] = cls_json;
    orbits.push_back(o);
  }
  r["orbits"] = orbits;

  if (ctx.json) {
    emit_json(ctx, envelope(ctx, r));
    return;
  }
  for (const auto& v : r["vertices"]) {
    *ctx.out << v["vertex"].get<std::string>() << ": " << v["element"].get<std::string>() << "  period "
             << v["period"].get<std::size_t>() << "  word " << v["rotation_word"].get<std::string>() << '\n';
  }
  for (const auto& o : r["orbits"]) {
    *ctx.out << "orbit";
    for (const auto& v : o["vertices"]) *ctx.out << ' ' << v.get<std::string>();
    *ctx.out << ": " << (o["conjugate"].get<bool>() ? "all conjugate" : "not all conjugate") << '\n';
  }
}

void cmd_classify(Context& ctx, const std::string& edge) {
  const LiftedVertexMap lm = lifted_map_of(ctx.spec);
  const EdgeId e = edge_arg(lm.graph(), edge);
  Json r;
  edge_map(ctx, lm, e, r);
  const EdgeClassification c = classify_edge(lm, e);
  r["classification"] = classification_json(c);
  if (ctx.json) {
    emit_json(ctx, envelope(ctx, r));
  } else {
    print_classification(*ctx.out, c);
  }
}

void cmd_predict(Context& ctx, const std::string& edge, std::int64_t max_den) {
  const LiftedVertexMap lm = lifted_map_of(ctx.spec);
  const EdgeId e = edge_arg(lm.graph(), edge);
  Json r;
  edge_map(ctx, lm, e, r);
  const EdgeClassification c = classify_edge(lm, e);
  const PredictionSet ps = predicted_elements(c, max_den);
  const Fmt f(c.map);
  r["classification"] = classification_json(c);
  r["max_denominator"] = max_den;
  Json preds = Json::array();
  for (const auto& p : ps.predictions) preds.push_back(prediction_json(f, p));
  Json fams = Json::array();
  for (const auto& fam : ps.families) fams.push_back(family_json(f, fam));
  r["predictions"] = preds;
  r["families"] = fams;
  if (ctx.json) {
    emit_json(ctx, envelope(ctx, r, sources_of(ps)));
    return;
  }
  print_classification(*ctx.out, c);
  for (const auto& fam : ps.families) *ctx.out << "family " << family_text(f, fam) << '\n';
  for (const auto& p : ps.predictions) {
    *ctx.out << "  " << f.rot(p.element) << "  witness period " << p.period_witness << "  (" << p.source
             << ")\n";
  }
}

void cmd_periodic(Context& ctx, const std::string& edge, std::size_t period) {
  const LiftedVertexMap lm = lifted_map_of(ctx.spec);
  const EdgeId e = edge_arg(lm.graph(), edge);
  if (period < 1) throw UsageError("--period must be at least 1");
  Json r;
  const LiftedVertexMap am = edge_map(ctx, lm, e, r);
  const Fmt f(am);
  const auto records = enumerate_periodic(am, e, period);
  r["edge"] = f.edge(e);
  r["period"] = period;
  Json recs = Json::array();
  for (const auto& rec : records) recs.push_back(record_json(f, rec));
  r["records"] = recs;
  if (ctx.json) {
    emit_json(ctx, envelope(ctx, r));
    return;
  }
  *ctx.out << "edge " << f.edge(e) << " period " << period << ": " << records.size() << " record(s)\n";
  for (const auto& rec : records) print_record(*ctx.out, f, rec);
}

void cmd_verify(Context& ctx, const std::string& edge, std::int64_t bound, std::int64_t max_den) {
  const LiftedVertexMap lm = lifted_map_of(ctx.spec);
  const EdgeId e = edge_arg(lm.graph(), edge);
  Json r;
  edge_map(ctx, lm, e, r);
  const EdgeClassification c = classify_edge(lm, e);
  const PredictionSet ps = predicted_elements(c, max_den);
  const auto checks = verify_predictions(c.map, e, ps.predictions, bound);
  const Fmt f(c.map);
  r["classification"] = classification_json(c);
  r["max_denominator"] = max_den;
  r["period_bound"] = bound;
  Json items = Json::array();
  std::size_t matched = 0;
  std::size_t unmatched = 0;
  std::size_t beyond = 0;
  for (const auto& ch : checks) {
    items.push_back(check_json(f, ch));
    (ch.status == MatchStatus::Matched ? matched : ch.status == MatchStatus::Unmatched ? unmatched : beyond)++;
  }
  r["checks"] = items;
  r["summary"] = {{"matched", matched}, {"unmatched", unmatched}, {"beyond_bound", beyond}};
  if (ctx.json) {
    emit_json(ctx, envelope(ctx, r, sources_of(ps)));
    return;
  }
  print_classification(*ctx.out, c);
  for (const auto& ch : checks) {
    *ctx.out << "  " << f.rot(ch.prediction.element) << "  witness " << ch.prediction.period_witness << "  "
             << to_string(ch.status);
    if (ch.witness) {
      *ctx.out << " at period " << ch.witness->period << ", " << to_string(ch.witness->kind) << ' '
               << location(f, *ch.witness);
    }
    *ctx.out << '\n';
  }
  *ctx.out << "matched " << matched << ", unmatched " << unmatched << ", beyond bound " << beyond
           << " (existence holds for the linearization and hence for f)\n";
}

void cmd_sset(Context& ctx, const std::string& edge, std::int64_t bound, int max_len, const std::string& mode) {
  const LiftedVertexMap lm = lifted_map_of(ctx.spec);
  const EdgeId e = edge_arg(lm.graph(), edge);
  VertexMode vm = VertexMode::Off;
  if (mode == "initial") {
    vm = VertexMode::Initial;
  } else if (mode == "terminal") {
    vm = VertexMode::Terminal;
  } else if (mode != "off") {
    throw UsageError("--vertex-mode must be off, initial or terminal");
  }
  Json r;
  const LiftedVertexMap am = edge_map(ctx, lm, e, r);
  const Fmt f(am);
  const SClosureReport rep = s_closure_check(am, e, bound, max_len, vm);
  r["edge"] = f.edge(e);
  r["vertex_mode"] = to_string(vm);
  Json seeds = Json::array();
  for (const auto& s : rep.seeds) {
    seeds.push_back({{"label", s.label},
                     {"rotation_word", f.word(s.raw.word)},
                     {"period", s.raw.period},
                     {"element", f.rot(s.element)}});
  }
  r["seeds"] = seeds;
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"x", c.x},
                      {"y", c.y},
                      {"r", c.member.r},
                      {"s", c.member.s},
                      {"word", f.word(c.member.word)},
                      {"period", c.member.period},
                      {"element", f.rot(c.member.element)},
                      {"status", to_string(c.status)},
                      {"witness", c.witness ? record_json(f, *c.witness) : Json(nullptr)}});
  }
  r["checks"] = checks;
  r["all_confirmed"] = rep.all_confirmed;
  if (ctx.json) {
    emit_json(ctx, envelope(ctx, r, {"s-closure"}));
    return;
  }
  *ctx.out << "seeds:\n";
  for (const auto& s : rep.seeds) {
    *ctx.out << "  " << s.label << "  " << f.rot(s.element) << "  period " << s.raw.period << '\n';
  }
  for (const auto& c : rep.checks) {
    *ctx.out << "  " << rep.seeds[c.x].label << " + " << rep.seeds[c.y].label << ": " << f.rot(c.member.element)
             << " at period " << c.member.period << "  " << to_string(c.status) << '\n';
  }
  *ctx.out << (rep.all_confirmed ? "all S-members within the bound confirmed" : "some S-members not found") << '\n';
}

void cmd_one_orbit(Context& ctx, std::int64_t max_den, std::int64_t bound) {
  const LiftedVertexMap lm = lifted_map_of(ctx.spec);
  const OneOrbitReport rep = one_orbit_analysis(lm, max_den, bound);
  const Graph& g = lm.graph();
  Json r;
  r["cycle_length"] = rep.cycle_length;
  r["rank"] = rep.rank;
  r["fixed_edge"] = rep.fixed_edge ? Json(g.edge_name(*rep.fixed_edge)) : Json(nullptr);
  if (!rep.fixed_edge) {
    if (ctx.json) {
      emit_json(ctx, envelope(ctx, r));
    } else {
      *ctx.out << "no edge with an interior fixed point of positive slope\n";
    }
    return;
  }
  const LiftedVertexMap am = analysis_map_for_edge(lm, *rep.fixed_edge);
  const Fmt f(am);
  r["fixed_point"] = record_json(f, *rep.fixed_point);
  r["rerooted"] = rep.rerooted;
  if (rep.rerooted) r["labeling"] = labeling_json(am.labeling());
  r["w1"] = f.word(rep.w1);
  r["w2"] = f.word(rep.w2);
  r["distinct"] = rep.distinct;
  Json nb = Json::array();
  for (EdgeId e : rep.non_belonging) nb.push_back(f.edge(e));
  r["non_belonging"] = nb;
  r["hypotheses_hold"] = rep.hypotheses_hold;
  if (rep.classification) {
    r["classification"] = classification_json(*rep.classification);
    Json checks = Json::array();
    for (const auto& c : rep.checks) checks.push_back(check_json(f, c));
    r["checks"] = checks;
  }
  if (ctx.json) {
    emit_json(ctx, envelope(ctx, r, {"one-orbit"}));
    return;
  }
  *ctx.out << "vertices form one orbit of length " << rep.cycle_length << ", rank " << rep.rank << '\n';
  *ctx.out << "fixed point of positive slope on " << f.edge(*rep.fixed_edge) << " at "
           << location(f, *rep.fixed_point) << '\n';
  if (rep.rerooted) print_labeling(*ctx.out, am.labeling());
  *ctx.out << "endpoint rotation words " << f.word(rep.w1) << " and " << f.word(rep.w2) << ": "
           << (rep.distinct ? "distinct" : "equal") << '\n';
  if (rep.non_belonging.empty()) {
    *ctx.out << "every edge belongs to " << f.word(rep.w1) << '\n';
  } else {
    *ctx.out << "edges not belonging to " << f.word(rep.w1) << ':';
    for (EdgeId e : rep.non_belonging) *ctx.out << ' ' << f.edge(e);
    *ctx.out << '\n';
  }
  if (rep.classification) {
    print_classification(*ctx.out, *rep.classification);
    for (const auto& c : rep.checks) {
      *ctx.out << "  " << f.rot(c.prediction.element) << "  " << to_string(c.status) << '\n';
    }
  } else {
    *ctx.out << "hypotheses unmet; no guaranteed family\n";
  }
}

void cmd_dot(Context& ctx, int radius, const std::string& out_path) {
  if (radius < 0) throw UsageError("--radius must be non-negative");
  const CoherentLabeling l = labeling_of(ctx.spec);
  const Graph& g = l.graph();
  std::vector<Word> words{Word{}};
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= radius; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (std::uint32_t gen = 0; gen < l.generator_count(); ++gen) {
        for (bool inv : {false, true}) {
          const Letter letter(gen, inv);
          if (!w.empty() && w.back().cancels(letter)) continue;
          std::vector<Letter> ls = w.letters();
          ls.push_back(letter);
          next.push_back(Word::from_letters(ls));
          if (words.size() + next.size() > 100000) throw ResourceError("DOT ball exceeds 100000 labels");
        }
      }
    }
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(words.begin(), words.end());
  const auto in_ball = [&](const Word& w) { return static_cast<int>(w.size()) <= radius; };
  std::ostringstream dot;
  Json nodes = Json::array();
  Json edges = Json::array();
  dot << "digraph cover {\n";
  for (const Word& w : words) {
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
      const std::string name = format_vertex(l, LiftedVertex{w, vertex_at(i)});
      nodes.push_back(name);
      dot << "  \"" << name << "\";\n";
    }
  }
  for (const Word& w : words) {
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      const EdgeId e = edge_at(i);
      const Word end = concat_reduce(w, l.theta(e));
      if (!in_ball(end)) continue;
      const std::string from = format_vertex(l, LiftedVertex{w, g.edge(e).from});
      const std::string to = format_vertex(l, LiftedVertex{end, g.edge(e).to});
      const std::string label = format_step(l, LiftedStep{w, e, Orientation::Forward});
      edges.push_back({{"from", from}, {"to", to}, {"label", label}});
      dot << "  \"" << from << "\" -> \"" << to << "\" [label=\"" << label << "\"];\n";
    }
  }
  dot << "}\n";
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot write '" + out_path + "'");
    f << dot.str();
  }
  if (ctx.json) {
    Json r;
    r["radius"] = radius;
    r["nodes"] = nodes;
    r["edges"] = edges;
    if (out_path.empty()) r["dot"] = dot.str();
    emit_json(ctx, envelope(ctx, r));
  } else if (out_path.empty()) {
    *ctx.out << dot.str();
  } else {
    *ctx.out << "wrote " << nodes.size() << " nodes and " << edges.size() << " edges to " << out_path << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotation elements of periodic points for vertex maps on graphs"};
  app.name("rotelt");
  app.require_subcommand(1);

  Context ctx;
  ctx.out = &out;
  std::string edge;
  std::string vertex;
  std::string out_path;
  std::string mode = "off";
  std::size_t period = 1;
  std::int64_t bound = 8;
  std::int64_t max_den = 4;
  int max_len = 2;
  int radius = 1;
  bool echo = false;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("spec", ctx.spec_path, "spec file")->required();
    sub->add_flag("--json", ctx.json, "machine-readable output");
    return sub;
  };
  auto* validate = common(app.add_subcommand("validate", "check the graph and map"));
  validate->add_flag("--echo", echo, "re-emit the spec in canonical form");
  auto* label = common(app.add_subcommand("label", "generator table and edge labels"));
  label->add_option("--edge", edge, "re-root over a tree containing this edge");
  auto* rotation = common(app.add_subcommand("rotation", "rotation elements of vertices"));
  rotation->add_option("--vertex", vertex, "a single vertex");
  auto* classify = common(app.add_subcommand("classify", "classify an edge"));
  classify->add_option("--edge", edge)->required();
  auto* predict = common(app.add_subcommand("predict", "guaranteed rotation elements on an edge"));
  predict->add_option("--edge", edge)->required();
  predict->add_option("--max-denom", max_den)->required()->check(CLI::PositiveNumber);
  auto* periodic = common(app.add_subcommand("periodic", "periodic points of the linearization"));
  periodic->add_option("--edge", edge)->required();
  periodic->add_option("--period", period)->required()->check(CLI::PositiveNumber);
  auto* verify = common(app.add_subcommand("verify", "check predictions against the oracle"));
  verify->add_option("--edge", edge)->required();
  verify->add_option("--period-bound", bound)->required()->check(CLI::PositiveNumber);
  verify->add_option("--max-denom", max_den)->check(CLI::PositiveNumber);
  auto* sset = common(app.add_subcommand("sset", "S-set closure on an edge"));
  sset->add_option("--edge", edge)->required();
  sset->add_option("--period-bound", bound)->required()->check(CLI::PositiveNumber);
  sset->add_option("--max-len", max_len)->required()->check(CLI::PositiveNumber);
  sset->add_option("--vertex-mode", mode)->check(CLI::IsMember({"off", "initial", "terminal"}));
  auto* one_orbit = common(app.add_subcommand("one-orbit", "analysis when the vertices form one orbit"));
  one_orbit->add_option("--max-denom", max_den)->check(CLI::PositiveNumber);
  one_orbit->add_option("--period-bound", bound)->check(CLI::PositiveNumber);
  auto* dot = common(app.add_subcommand("dot", "DOT drawing of a ball in the universal cover"));
  dot->add_option("--radius", radius)->required()->check(CLI::NonNegativeNumber);
  dot->add_option("--out", out_path);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  ctx.command = sub->get_name();
  try {
    std::ifstream in(ctx.spec_path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + ctx.spec_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    ctx.spec_text = buf.str();
    std::string digest_input = ctx.spec_text;
    for (const auto& a : args) digest_input += '\0' + a;
    ctx.digest = fnv1a_hex(digest_input);
    ctx.spec = parse_spec_text(ctx.spec_text);

    if (sub == validate) cmd_validate(ctx, echo);
    else if (sub == label) cmd_label(ctx, edge);
    else if (sub == rotation) cmd_rotation(ctx, vertex);
    else if (sub == classify) cmd_classify(ctx, edge);
    else if (sub == predict) cmd_predict(ctx, edge, max_den);
    else if (sub == periodic) cmd_periodic(ctx, edge, period);
    else if (sub == verify) cmd_verify(ctx, edge, bound, max_den);
    else if (sub == sset) cmd_sset(ctx, edge, bound, max_len, mode);
    else if (sub == one_orbit) cmd_one_orbit(ctx, max_den, bound);
    else if (sub == dot) cmd_dot(ctx, radius, out_path);
  } catch (const UsageError& e) {
    err << "rotelt: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SpecError& e) {
    err << ctx.spec_path;
    if (e.line() > 0) err << ':' << e.line() << ':' << e.column();
    err << ": " << kind_name(e.kind()) << ": " << e.what() << '\n';
    return kExitSpecInvalid;
  } catch (const HypothesisError& e) {
    err << "rotelt: hypothesis unmet: " << e.what() << '\n';
    return kExitHypothesis;
  } catch (const ResourceError& e) {
    err << "rotelt: resource cap: " << e.what() << '\n';
    return kExitResource;
  }
  return kExitOk;
}

}  // namespace rotelt
