#include "rotelt/oracle.hpp"

#include "rotelt/errors.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rotelt {

namespace {

struct Node {
  Rational lo;
  Rational hi;
  LiftedStep step;
  std::size_t depth;
  std::vector<std::size_t> itinerary;
};

/// Endpoints become vertices so that both representations compare equal.
std::optional<LiftedVertex> as_vertex(const CoherentLabeling& l, const LiftedPoint& x) {
  const auto& rec = l.graph().edge(x.edge);
  if (x.t == 0) return LiftedVertex{x.prefix, rec.from};
  if (x.t == 1) return LiftedVertex{concat_reduce(x.prefix, l.theta(x.edge)), rec.to};
  return std::nullopt;
}

std::vector<std::int64_t> divisors(std::int64_t q) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= q; ++d) {
    if (q % d == 0) out.push_back(d);
  }
  return out;
}

class RecordCache {
 public:
  RecordCache(const LiftedVertexMap& lm, EdgeId e, std::size_t cap) : lm_(lm), e_(e), cap_(cap) {}

  const std::vector<PeriodicPointRecord>& at(std::int64_t n) {
    auto it = cache_.find(n);
    if (it == cache_.end()) {
      it = cache_.emplace(n, enumerate_periodic(lm_, e_, static_cast<std::size_t>(n), cap_)).first;
    }
    return it->second;
  }

 private:
  const LiftedVertexMap& lm_;
  EdgeId e_;
  std::size_t cap_;
  std::map<std::int64_t, std::vector<PeriodicPointRecord>> cache_;
};

}  // namespace

std::vector<Branch> branch_decomposition(const LiftedVertexMap& lm, EdgeId e, std::size_t n,
                                         std::size_t cap) {
  // leaf counts per edge and depth, saturating at cap + 1
  const Graph& g = lm.graph();
  std::vector<std::size_t> count(g.edge_count(), 1);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::size_t> next(g.edge_count(), 0);
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      for (const EdgeStep& s : lm.image(edge_at(i)).steps) {
        next[i] = std::min(cap + 1, next[i] + count[idx(s.edge)]);
      }
    }
    count = std::move(next);
  }
  if (count[idx(e)] > cap) throw ResourceError("branch count exceeds the cap of " + std::to_string(cap));

  std::vector<Branch> out;
  std::vector<Node> stack;
  stack.push_back({Rational(0), Rational(1), LiftedStep{Word{}, e, Orientation::Forward}, 0, {}});
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (node.depth == n) {
      if (out.size() >= cap) {
        throw ResourceError("branch count exceeds the cap of " + std::to_string(cap));
      }
      out.push_back({node.lo, node.hi, std::move(node.step), std::move(node.itinerary)});
      continue;
    }
    const LiftedPath img = lifted_step_image(lm, node.step);
    const Rational width = (node.hi - node.lo) / static_cast<std::int64_t>(img.size());
    for (std::size_t j = img.size(); j-- > 0;) {
      Node child{node.lo + width * static_cast<std::int64_t>(j),
                 node.lo + width * static_cast<std::int64_t>(j + 1), img.steps[j], node.depth + 1,
                 node.itinerary};
      child.itinerary.push_back(j);
      stack.push_back(std::move(child));
    }
  }
  return out;
}

bool same_point(const CoherentLabeling& l, const LiftedPoint& a, const LiftedPoint& b) {
  const auto va = as_vertex(l, a);
  const auto vb = as_vertex(l, b);
  if (va || vb) return va && vb && *va == *vb;
  return a.edge == b.edge && a.t == b.t && a.prefix == b.prefix;
}

LiftedPoint apply_linearization(const LiftedVertexMap& lm, const LiftedPoint& x) {
  const LiftedPath img = lifted_step_image(lm, LiftedStep{x.prefix, x.edge, Orientation::Forward});
  const auto len = static_cast<std::int64_t>(img.size());
  const Rational pos = x.t * len;
  BigInt j = boost::multiprecision::numerator(pos) / boost::multiprecision::denominator(pos);
  if (j >= len) j = len - 1;
  const Rational s = pos - Rational(j);
  const LiftedStep& step = img.steps[static_cast<std::size_t>(j.convert_to<std::int64_t>())];
  return {step.prefix, step.edge, step.orientation == Orientation::Forward ? s : Rational(1) - s};
}

std::string to_string(PointKind k) {
  switch (k) {
    case PointKind::Interior: return "interior";
    case PointKind::VertexEnd: return "vertex-end";
    case PointKind::Degenerate: return "degenerate";
  }
  return "?";
}

std::vector<PeriodicPointRecord> enumerate_periodic(const LiftedVertexMap& lm, EdgeId e,
                                                    std::size_t n, std::size_t cap) {
  if (n < 1) throw std::invalid_argument("period must be at least 1");
  const auto& rec = lm.graph().edge(e);
  const auto branches = branch_decomposition(lm, e, n, cap);
  std::vector<PeriodicPointRecord> out;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const Branch& b = branches[i];
    if (b.target.edge != e) continue;
    PeriodicPointRecord r;
    r.edge = e;
    r.lo = b.lo;
    r.hi = b.hi;
    r.period = static_cast<std::int64_t>(n);
    r.word = b.target.prefix;
    r.element = normalize_rot(r.word, r.period);
    r.orientation = b.target.orientation;
    r.branch_index = i;
    r.itinerary = b.itinerary;
    const Rational width = b.hi - b.lo;
    r.slope = r.orientation == Orientation::Forward ? Rational(1) / width : Rational(-1) / width;
    if (r.orientation == Orientation::Forward && width == 1) {
      r.kind = PointKind::Degenerate;
      r.t = b.lo;
    } else {
      r.t = r.orientation == Orientation::Forward ? b.lo / (Rational(1) - width)
                                                  : b.hi / (Rational(1) + width);
      if (r.t == 0 || r.t == 1) {
        r.kind = PointKind::VertexEnd;
        r.vertex = r.t == 0 ? rec.from : rec.to;
      }
    }
    // Minimal period by direct iteration of the point.
    const Rational probe = r.kind == PointKind::Degenerate ? Rational(1, 2) : r.t;
    const LiftedPoint start{Word{}, e, probe};
    r.minimal_period = r.period;
    for (std::int64_t d : divisors(r.period)) {
      if (d == r.period) break;
      LiftedPoint x = start;
      for (std::int64_t s = 0; s < d; ++s) x = apply_linearization(lm, x);
      const LiftedVertex base = r.kind == PointKind::VertexEnd
                                    ? *as_vertex(lm.labeling(), start)
                                    : LiftedVertex{};
      bool back = false;
      if (r.kind == PointKind::VertexEnd) {
        const auto vx = as_vertex(lm.labeling(), x);
        back = vx && vx->vertex == base.vertex;
      } else {
        back = x.edge == e && x.t == probe;
      }
      if (back) {
        r.minimal_period = d;
        break;
      }
    }
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const PeriodicPointRecord& a, const PeriodicPointRecord& b) { return a.t < b.t; });
  return out;
}

std::string to_string(MatchStatus s) {
  switch (s) {
    case MatchStatus::Matched: return "matched";
    case MatchStatus::Unmatched: return "unmatched";
    case MatchStatus::BeyondBound: return "beyond-bound";
  }
  return "?";
}

std::vector<PredictionCheck> verify_predictions(const LiftedVertexMap& lm, EdgeId e,
                                                const std::vector<Prediction>& preds,
                                                std::int64_t period_bound, std::size_t cap) {
  RecordCache cache(lm, e, cap);
  std::vector<PredictionCheck> out;
  for (const Prediction& p : preds) {
    PredictionCheck check{p, MatchStatus::Unmatched, std::nullopt};
    const std::int64_t q = p.period_witness;
    bool witness_in_range = q <= period_bound;
    for (std::int64_t d = 1; d <= period_bound && !check.witness; ++d) {
      if (q % d != 0 && d % q != 0) continue;
      for (const auto& r : cache.at(d)) {
        if (conjugacy_equal(r.element, p.element)) {
          check.witness = r;
          break;
        }
      }
    }
    if (check.witness) {
      check.status = MatchStatus::Matched;
    } else if (!witness_in_range) {
      check.status = MatchStatus::BeyondBound;
    }
    out.push_back(std::move(check));
  }
  return out;
}

std::string to_string(VertexMode m) {
  switch (m) {
    case VertexMode::Off: return "off";
    case VertexMode::Initial: return "initial";
    case VertexMode::Terminal: return "terminal";
  }
  return "?";
}

SClosureReport s_closure_check(const LiftedVertexMap& lm, EdgeId e, std::int64_t period_bound,
                               int max_len, VertexMode mode, std::size_t cap) {
  const Graph& g = lm.graph();
  const auto& rec = g.edge(e);
  RecordCache cache(lm, e, cap);
  SClosureReport report;

  std::optional<SSeed> vertex_seed;
  if (mode != VertexMode::Off) {
    const VertexId v = mode == VertexMode::Initial ? rec.from : rec.to;
    const std::size_t m = cycle_length(lm, v);
    const auto branches = branch_decomposition(lm, e, m, cap);
    const Branch& end = mode == VertexMode::Initial ? branches.front() : branches.back();
    if (end.target.edge != e || end.target.orientation != Orientation::Forward) {
      throw HypothesisError(std::string("the path L^") + std::to_string(m) + "(" + g.edge_name(e) +
                            ") does not " + (mode == VertexMode::Initial ? "begin" : "end") +
                            " with " + g.edge_name(e));
    }
    LiftedVertex x{mode == VertexMode::Initial ? Word{} : lm.labeling().theta(e), v};
    const LiftedVertex start = x;
    for (std::size_t i = 0; i < m; ++i) x = apply_lift_vertex(lm, x);
    const Word w = concat_reduce(x.label, invert(start.label));
    const auto mm = static_cast<std::int64_t>(m);
    vertex_seed = SSeed{g.vertex_name(v), RawRotation{w, mm}, normalize_rot(w, mm)};
  }

  std::vector<Rational> seen;
  for (std::int64_t n = 1; n <= period_bound; ++n) {
    for (const auto& r : cache.at(n)) {
      if (r.kind != PointKind::Interior) continue;
      if (std::find(seen.begin(), seen.end(), r.t) != seen.end()) continue;
      seen.push_back(r.t);
      report.seeds.push_back({"t=" + to_string(r.t), RawRotation{r.word, n}, r.element});
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (vertex_seed) {
    report.seeds.insert(report.seeds.begin(), *vertex_seed);
    for (std::size_t j = 1; j < report.seeds.size(); ++j) pairs.emplace_back(0, j);
  } else {
    for (std::size_t i = 0; i < report.seeds.size(); ++i) {
      for (std::size_t j = i + 1; j < report.seeds.size(); ++j) pairs.emplace_back(i, j);
    }
  }

  for (const auto& [i, j] : pairs) {
    for (const SMember& m : generate_s_members(report.seeds[i].raw, report.seeds[j].raw, max_len)) {
      if (m.period > period_bound) continue;
      SCheck check{i, j, m, MatchStatus::Unmatched, std::nullopt};
      // powers of the vertex seed alone are realized by the vertex itself
      const bool vertex_only = vertex_seed && m.s == 0;
      for (const auto& r : cache.at(m.period)) {
        const bool kind_ok = r.kind == PointKind::Interior || (vertex_only && r.kind == PointKind::VertexEnd);
        if (kind_ok && r.element == m.element) {
          check.witness = r;
          check.status = MatchStatus::Matched;
          break;
        }
      }
      if (check.status != MatchStatus::Matched) report.all_confirmed = false;
      report.checks.push_back(std::move(check));
    }
  }
  return report;
}

OneOrbitReport one_orbit_analysis(const LiftedVertexMap& lm, std::int64_t max_denominator,
                                  std::int64_t period_bound, std::size_t cap) {
  const Graph& g = lm.graph();
  OneOrbitReport report;
  report.cycle_length = cycle_length(lm, vertex_at(0));
  report.rank = g.rank();
  if (report.cycle_length != g.vertex_count()) {
    throw HypothesisError("the vertices do not form one periodic orbit");
  }
  if (report.rank < 2) {
    throw HypothesisError("the fundamental group has fewer than two generators");
  }

  for (std::size_t i = 0; i < g.edge_count() && !report.fixed_edge; ++i) {
    for (const auto& r : enumerate_periodic(lm, edge_at(i), 1, cap)) {
      if (r.kind == PointKind::Interior && r.word.empty() && r.orientation == Orientation::Forward) {
        report.fixed_edge = edge_at(i);
        report.fixed_point = r;
        break;
      }
    }
  }
  if (!report.fixed_edge) return report;

  const EdgeId e = *report.fixed_edge;
  const LiftedVertexMap am = analysis_map_for_edge(lm, e);
  report.rerooted = !lm.labeling().tree().contains(e);
  const EndpointData d = endpoint_data(am, e);
  report.w1 = d.w1;
  report.w2 = d.w2;
  report.distinct = d.w1 != d.w2;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    if (!belongs(am.labeling(), edge_at(i), d.w1)) report.non_belonging.push_back(edge_at(i));
  }
  report.hypotheses_hold = report.distinct && report.non_belonging.empty();
  if (!report.hypotheses_hold) return report;

  report.classification = classify_edge(am, e);
  report.predictions = predicted_elements(*report.classification, max_denominator);
  report.checks = verify_predictions(am, e, report.predictions.predictions, period_bound, cap);
  return report;
}

}  // namespace rotelt
