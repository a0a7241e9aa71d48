#include "rotelt/detector.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rotelt {

namespace {

void require_canonical_lift(const LiftedVertexMap& lm) {
  if (!lm.shift().empty()) {
    throw std::invalid_argument("edge analysis needs the canonical lift (no deck shift)");
  }
}

void require_tree_edge(const LiftedVertexMap& lm, EdgeId e) {
  if (!lm.labeling().tree().contains(e)) {
    throw std::invalid_argument("edge '" + lm.graph().edge_name(e) +
                                "' is not a tree edge of the labeling");
  }
}

LiftedPath base_edge(const LiftedVertexMap& lm, EdgeId e) {
  const auto& rec = lm.graph().edge(e);
  return {LiftedVertex{Word{}, rec.from},
          {LiftedStep{Word{}, e, Orientation::Forward}},
          LiftedVertex{lm.labeling().theta(e), rec.to}};
}

std::set<Word> e_labels(const LiftedPath& p, EdgeId e) {
  std::set<Word> out;
  for (const auto& s : p.steps) {
    if (s.edge == e) out.insert(s.prefix);
  }
  return out;
}

/// Signed exponent of w over the primitive u, when w is a power of u.
std::int64_t exponent_over(const Word& w, const Word& u) {
  if (w.empty()) return 0;
  const PrimitiveRoot pr = primitive_root(w);
  if (pr.root == u) return pr.exponent;
  if (pr.root == invert(u)) return -pr.exponent;
  throw std::logic_error("word is not a power of the common root");
}

/// l/k with 1 <= k <= max_den in lowest terms inside the range.
std::vector<Rational> rationals_between(const Rational& lower, bool lower_closed,
                                        const Rational& upper, std::int64_t max_den) {
  std::set<Rational> out;
  for (std::int64_t k = 1; k <= max_den; ++k) {
    const Rational lo = lower * k;
    const BigInt start = boost::multiprecision::numerator(lo) / boost::multiprecision::denominator(lo);
    for (BigInt l = start - 1;; ++l) {
      const Rational r(l, BigInt(k));
      if (r >= upper) break;
      if (r > lower || (lower_closed && r == lower)) out.insert(r);
    }
  }
  return {out.begin(), out.end()};
}

std::int64_t to_i64(const BigInt& b) { return b.convert_to<std::int64_t>(); }

Prediction make_prediction(std::string source, int side, const Word& base, std::int64_t p,
                           std::int64_t q, const std::optional<Word>& gamma, const Rational& r) {
  Prediction out;
  out.word = power(base, p);
  if (gamma) out.word = concat_reduce(out.word, *gamma);
  out.element = normalize_rot(out.word, q);
  out.period_witness = q;
  out.source = std::move(source);
  out.gamma = gamma;
  out.side = side;
  out.r = r;
  out.p = p;
  out.q = q;
  return out;
}

/// 1 + the largest i with w^i gamma equal to some v^j sigma, 0 when none.
std::int64_t collision_threshold(const Word& w, const Word& gamma, const Word& v,
                                 const std::vector<Word>& sigmas) {
  std::int64_t best = 0;
  for (const Word& sigma : sigmas) {
    const std::int64_t bound =
        2 * static_cast<std::int64_t>(w.size() + v.size() + gamma.size() + sigma.size()) + 4;
    std::vector<Word> rhs;
    for (std::int64_t j = 0; j <= bound; ++j) rhs.push_back(concat_reduce(power(v, j), sigma));
    for (std::int64_t i = 0; i <= bound; ++i) {
      const Word lhs = concat_reduce(power(w, i), gamma);
      if (std::find(rhs.begin(), rhs.end(), lhs) != rhs.end()) best = std::max(best, i + 1);
    }
  }
  return best;
}

Word strip_powers(Word gamma, const Word& u) {
  while (!u.empty() && is_prefix(u, gamma)) gamma = concat_reduce(invert(u), gamma);
  return gamma;
}

}  // namespace

EndpointData endpoint_data(const LiftedVertexMap& lm, EdgeId e) {
  EndpointData d;
  const auto& rec = lm.graph().edge(e);
  d.v1 = rec.from;
  d.v2 = rec.to;
  d.m = static_cast<std::int64_t>(cycle_length(lm, d.v1));
  d.n = static_cast<std::int64_t>(cycle_length(lm, d.v2));
  d.w1 = rotation_word(lm, d.v1, static_cast<std::size_t>(d.m));
  d.w2 = rotation_word(lm, d.v2, static_cast<std::size_t>(d.n));
  return d;
}

LiftedPath p_path(const LiftedVertexMap& lm, VertexId v, const Word& w, std::int64_t k) {
  if (k < 0) return reverse(p_path(lm, v, w, -k));
  return geodesic(lm.labeling(), LiftedVertex{Word{}, v}, LiftedVertex{power(w, k), v});
}

bool begins_with(const LiftedPath& p, EdgeId e) {
  return !p.steps.empty() && p.steps.front().edge == e && p.steps.front().prefix.empty();
}

bool belongs(const CoherentLabeling& l, EdgeId e, const Word& w) {
  if (w.empty()) return false;
  const EdgePath loop = word_to_loop(l, w);
  std::deque<EdgeStep> steps(loop.steps.begin(), loop.steps.end());
  while (steps.size() >= 2 && steps.front() == steps.back().reversed()) {
    steps.pop_front();
    steps.pop_back();
  }
  return std::any_of(steps.begin(), steps.end(), [e](const EdgeStep& s) { return s.edge == e; });
}

std::vector<Word> occurrence_prefixes(const LiftedVertexMap& lm, EdgeId e, VertexId v,
                                      const Word& w) {
  std::vector<Word> out;
  for (const auto& s : p_path(lm, v, w, 1).steps) {
    if (s.edge == e && std::find(out.begin(), out.end(), s.prefix) == out.end()) {
      out.push_back(s.prefix);
    }
  }
  return out;
}

std::vector<Word> gamma_words(const LiftedVertexMap& lm, EdgeId e, VertexId v, const Word& w) {
  if (!belongs(lm.labeling(), e, w)) throw std::invalid_argument("edge does not belong to w");
  std::vector<std::set<Word>> labels;
  for (std::int64_t k = 1; k <= 3; ++k) labels.push_back(e_labels(p_path(lm, v, w, k), e));
  std::vector<Word> out;
  for (const Word& gamma : occurrence_prefixes(lm, e, v, w)) {
    if (!is_prefix(gamma, w)) continue;
    bool window = true;
    for (std::int64_t k = 1; k <= 3 && window; ++k) {
      for (std::int64_t i = -k - 1; i <= 2 * k + 1; ++i) {
        const bool present = labels[k - 1].count(concat_reduce(power(w, i), gamma)) > 0;
        if (present != (i >= 0 && i < k)) {
          window = false;
          break;
        }
      }
    }
    if (window) out.push_back(gamma);
  }
  return out;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::FpNeither: return "FpNeither";
    case Regime::FpBoth: return "FpBoth";
    case Regime::OneBegins: return "OneBegins";
  }
  return "?";
}

std::string to_string(EdgeCase c) {
  switch (c) {
    case EdgeCase::FpNeither: return "FpNeither";
    case EdgeCase::FpBoth: return "FpBoth";
    case EdgeCase::BelongsOne: return "BelongsOne";
    case EdgeCase::BelongsBothNeitherBegin: return "BelongsBothNeitherBegin";
    case EdgeCase::BelongsBothBothBegin: return "BelongsBothBothBegin";
    case EdgeCase::CommonRootInterval: return "CommonRootInterval";
    case EdgeCase::BelongsBothNotPowers: return "BelongsBothNotPowers";
    case EdgeCase::NoGuarantee: return "NoGuarantee";
  }
  return "?";
}

CaseDecision decide_case(const CaseFlags& f) {
  CaseDecision d;
  const int one_side = f.belongs1 ? 1 : 2;
  if (f.begins1 == f.begins2) {
    d.regime = f.begins1 ? Regime::FpBoth : Regime::FpNeither;
    if (f.belongs1 && f.belongs2) {
      d.edge_case = f.begins1 ? EdgeCase::BelongsBothBothBegin : EdgeCase::BelongsBothNeitherBegin;
    } else if (f.belongs1 || f.belongs2) {
      d.edge_case = EdgeCase::BelongsOne;
      d.side = one_side;
    } else {
      d.edge_case = f.begins1 ? EdgeCase::FpBoth : EdgeCase::FpNeither;
    }
    return d;
  }
  d.regime = Regime::OneBegins;
  if (f.common_root && f.belongs_root) {
    d.edge_case = EdgeCase::CommonRootInterval;
  } else if (f.belongs1 && f.belongs2) {
    d.edge_case = EdgeCase::BelongsBothNotPowers;
  } else if (f.belongs1 || f.belongs2) {
    d.edge_case = EdgeCase::BelongsOne;
    d.side = one_side;
  } else {
    d.edge_case = EdgeCase::NoGuarantee;
  }
  return d;
}

EdgeClassification classify_edge(const LiftedVertexMap& lm, EdgeId e) {
  require_canonical_lift(lm);
  EdgeClassification c{analysis_map_for_edge(lm, e), !lm.labeling().tree().contains(e), e, {}, {},
                       std::nullopt, {}, {}, {}};
  const LiftedVertexMap& am = c.map;
  const CoherentLabeling& l = am.labeling();
  c.ends = endpoint_data(am, e);
  const EndpointData& d = c.ends;
  c.flags.begins1 = begins_with(p_path(am, d.v1, d.w1, 1), e);
  c.flags.begins2 = begins_with(p_path(am, d.v2, d.w2, 1), e);
  c.flags.belongs1 = belongs(l, e, d.w1);
  c.flags.belongs2 = belongs(l, e, d.w2);
  if (auto root = common_primitive(d.w1, d.w2)) {
    c.common_root = CommonRoot{*root, exponent_over(d.w1, *root), exponent_over(d.w2, *root)};
    c.flags.common_root = true;
    c.flags.belongs_root = belongs(l, e, *root);
  }
  c.decision = decide_case(c.flags);
  if (c.flags.belongs1) c.gamma1 = gamma_words(am, e, d.v1, d.w1);
  if (c.flags.belongs2) c.gamma2 = gamma_words(am, e, d.v2, d.w2);
  return c;
}

PredictionSet predicted_elements(const EdgeClassification& c, std::int64_t max_denominator) {
  PredictionSet out;
  const EndpointData& d = c.ends;
  const std::int64_t mn = d.m * d.n;
  const auto side_word = [&](int side) -> const Word& { return side == 1 ? d.w1 : d.w2; };
  const auto side_period = [&](int side) { return side == 1 ? d.m : d.n; };
  const auto side_gammas = [&](int side) -> const std::vector<Word>& {
    return side == 1 ? c.gamma1 : c.gamma2;
  };

  if (c.decision.edge_case != EdgeCase::NoGuarantee && c.decision.regime != Regime::OneBegins) {
    const std::string src =
        c.decision.regime == Regime::FpBoth ? "fixed-point-both-begin" : "fixed-point-neither-begins";
    Prediction p;
    p.element = RotationElement::identity();
    p.period_witness = 1;
    p.source = src;
    out.predictions.push_back(p);
    out.families.push_back({src, 0, "1", Rational(0), Rational(0), true, true, Word{}, std::nullopt});
  }

  // (w^{lmn} gamma)^{1/kmn} for l/k in the range.
  const auto below_period = [&](const std::string& src, int side, bool closed_at_zero,
                                bool trivial_gamma) {
    const Word& w = side_word(side);
    const Rational upper(BigInt(1), BigInt(side_period(side)));
    std::vector<std::optional<Word>> gammas;
    if (trivial_gamma) {
      gammas.push_back(Word{});
    } else {
      for (const Word& g : side_gammas(side)) gammas.push_back(g);
    }
    for (const auto& gamma : gammas) {
      out.families.push_back({src, side, trivial_gamma ? "w^r" : "(w^p gamma)^(1/q)", Rational(0),
                              upper, closed_at_zero, false, w, gamma});
      for (const Rational& r : rationals_between(Rational(0), closed_at_zero, upper, max_denominator)) {
        const std::int64_t l = to_i64(boost::multiprecision::numerator(r));
        const std::int64_t k = to_i64(boost::multiprecision::denominator(r));
        out.predictions.push_back(make_prediction(src, side, w, l * mn, k * mn, gamma, r));
      }
    }
  };

  switch (c.decision.edge_case) {
    case EdgeCase::FpNeither:
    case EdgeCase::FpBoth:
    case EdgeCase::NoGuarantee:
      break;
    case EdgeCase::BelongsOne:
      below_period("belongs-one", c.decision.side, false, false);
      break;
    case EdgeCase::BelongsBothNeitherBegin:
      below_period("belongs-both-neither-begins", 1, false, false);
      below_period("belongs-both-neither-begins", 2, false, false);
      break;
    case EdgeCase::BelongsBothBothBegin:
      below_period("belongs-both-both-begin", 1, true, true);
      below_period("belongs-both-both-begin", 2, true, true);
      break;
    case EdgeCase::CommonRootInterval: {
      const CommonRoot& cr = *c.common_root;
      // Each sign of the interval is handled with the root oriented so that
      // the larger end has a positive exponent.
      for (int sign : {1, -1}) {
        const Word u = sign == 1 ? cr.root : invert(cr.root);
        const Rational e1(BigInt(sign * cr.k1), BigInt(d.m));
        const Rational e2(BigInt(sign * cr.k2), BigInt(d.n));
        const int big = e1 > e2 ? 1 : 2;
        const Rational upper = big == 1 ? e1 : e2;
        const Rational other = big == 1 ? e2 : e1;
        if (upper <= 0) continue;
        const Rational lower = other > 0 ? other : Rational(0);
        if (lower >= upper) continue;
        const std::int64_t kb = sign * (big == 1 ? cr.k1 : cr.k2);
        std::vector<Word> gammas;
        const Word& wb = side_word(big);
        const std::vector<Word> raw =
            side_gammas(big).empty() ? gamma_words(c.map, c.edge, big == 1 ? d.v1 : d.v2, wb)
                                     : side_gammas(big);
        for (const Word& g : raw) {
          const Word s = strip_powers(g, u);
          if (std::find(gammas.begin(), gammas.end(), s) == gammas.end()) gammas.push_back(s);
        }
        for (const Word& gamma : gammas) {
          out.families.push_back({"common-root-interval", big, "(u^p gamma)^(1/q)", lower, upper,
                                  false, false, u, gamma});
          for (const Rational& r : rationals_between(lower, false, upper, max_denominator)) {
            const std::int64_t pp = to_i64(boost::multiprecision::numerator(r));
            const std::int64_t qq = to_i64(boost::multiprecision::denominator(r));
            out.predictions.push_back(make_prediction("common-root-interval", big, u,
                                                      kb * pp * mn, kb * qq * mn, gamma, r));
          }
        }
      }
      break;
    }
    case EdgeCase::BelongsBothNotPowers: {
      for (int side : {1, 2}) {
        const int other = 3 - side;
        const Word& w = side_word(side);
        const Word& v = side_word(other);
        std::vector<Word> sigmas =
            occurrence_prefixes(c.map, c.edge, other == 1 ? d.v1 : d.v2, v);
        sigmas.push_back(Word{});
        const Rational upper(BigInt(1), BigInt(side_period(side)));
        for (const Word& gamma : side_gammas(side)) {
          const std::int64_t threshold = collision_threshold(w, gamma, v, sigmas);
          out.families.push_back({"belongs-both-not-powers", side, "(w^p gamma)^(1/q)", Rational(0),
                                  upper, false, false, w, gamma});
          for (const Rational& r : rationals_between(Rational(0), false, upper, max_denominator)) {
            const std::int64_t pb = to_i64(boost::multiprecision::numerator(r));
            const std::int64_t qb = to_i64(boost::multiprecision::denominator(r));
            const std::int64_t unit = pb * mn;
            const std::int64_t scale = std::max<std::int64_t>(1, (threshold + unit - 1) / unit);
            out.predictions.push_back(make_prediction("belongs-both-not-powers", side, w,
                                                      scale * unit, scale * qb * mn, gamma, r));
          }
        }
      }
      break;
    }
  }
  std::vector<Prediction> unique;
  for (Prediction& p : out.predictions) {
    const bool seen = std::any_of(unique.begin(), unique.end(),
                                  [&](const Prediction& q) { return q.element == p.element; });
    if (!seen) unique.push_back(std::move(p));
  }
  out.predictions = std::move(unique);
  return out;
}

LiftedPath contraction_witness(const LiftedVertexMap& lm, EdgeId e, std::int64_t k) {
  require_canonical_lift(lm);
  require_tree_edge(lm, e);
  if (k < 1) throw std::invalid_argument("k must be positive");
  const EndpointData d = endpoint_data(lm, e);
  LiftedPath p = reverse(p_path(lm, d.v1, d.w1, k * d.n));
  p = concat(p, base_edge(lm, e));
  p = concat(p, p_path(lm, d.v2, d.w2, k * d.m));
  return contract(p);
}

std::vector<Detection> detect_in_contraction(const LiftedVertexMap& lm, EdgeId e, std::int64_t k) {
  const EndpointData d = endpoint_data(lm, e);
  const std::int64_t period = k * d.m * d.n;
  std::vector<Detection> out;
  for (const auto& s : contraction_witness(lm, e, k).steps) {
    if (s.edge == e) out.push_back({s.prefix, s.orientation, normalize_rot(s.prefix, period)});
  }
  return out;
}

}  // namespace rotelt
