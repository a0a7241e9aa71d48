#pragma once

#include "rotelt/detector.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rotelt {

/// A maximal interval of E mapped affinely by L_f^n onto one lifted edge.
struct Branch {
  Rational lo{0};
  Rational hi{1};
  LiftedStep target;  // traversal orientation relative to E
  std::vector<std::size_t> itinerary;
};

/// Left-to-right branches of L_f^n on E; targets agree with the branchwise
/// iteration of the lifted edge. Throws ResourceError past the cap.
std::vector<Branch> branch_decomposition(const LiftedVertexMap& lm, EdgeId e, std::size_t n,
                                         std::size_t cap = kDefaultLengthCap);

/// A point of the lifted edge prefix E~ at coordinate t.
struct LiftedPoint {
  Word prefix;
  EdgeId edge{};
  Rational t{0};
};

/// Equality in the cover; endpoints are compared as vertices.
bool same_point(const CoherentLabeling& l, const LiftedPoint& a, const LiftedPoint& b);

/// One step of the lifted linearization.
LiftedPoint apply_linearization(const LiftedVertexMap& lm, const LiftedPoint& x);

enum class PointKind { Interior, VertexEnd, Degenerate };

std::string to_string(PointKind k);

struct PeriodicPointRecord {
  EdgeId edge{};
  PointKind kind = PointKind::Interior;
  Rational t{0};                    // Interior and VertexEnd
  Rational lo{0};                   // branch interval; the whole location when Degenerate
  Rational hi{1};
  std::optional<VertexId> vertex;   // VertexEnd
  std::int64_t period = 1;          // the iterate solved
  std::int64_t minimal_period = 1;
  Word word;                        // L~^period(x~) = word x~
  RotationElement element;
  Orientation orientation = Orientation::Forward;
  Rational slope{1};
  std::size_t branch_index = 0;
  std::vector<std::size_t> itinerary;
};

/// All x in the closed edge with L^n(x) = x, one record per branch solution,
/// ordered by coordinate.
std::vector<PeriodicPointRecord> enumerate_periodic(const LiftedVertexMap& lm, EdgeId e,
                                                    std::size_t n,
                                                    std::size_t cap = kDefaultLengthCap);

enum class MatchStatus { Matched, Unmatched, BeyondBound };

std::string to_string(MatchStatus s);

struct PredictionCheck {
  Prediction prediction;
  MatchStatus status = MatchStatus::Unmatched;
  std::optional<PeriodicPointRecord> witness;
};

/// A prediction is matched by a record with conjugate element at some period
/// d <= period_bound with d dividing the witness period or divisible by it.
std::vector<PredictionCheck> verify_predictions(const LiftedVertexMap& lm, EdgeId e,
                                                const std::vector<Prediction>& preds,
                                                std::int64_t period_bound,
                                                std::size_t cap = kDefaultLengthCap);

enum class VertexMode { Off, Initial, Terminal };

std::string to_string(VertexMode m);

struct SSeed {
  std::string label;  // "t=1/2" or a vertex name
  RawRotation raw;
  RotationElement element;
};

struct SCheck {
  std::size_t x = 0;  // seed indices
  std::size_t y = 0;
  SMember member;
  MatchStatus status = MatchStatus::Unmatched;
  std::optional<PeriodicPointRecord> witness;
};

struct SClosureReport {
  std::vector<SSeed> seeds;
  std::vector<SCheck> checks;
  bool all_confirmed = true;
};

/// Forms S for pairs of interior periodic points of E (or the chosen end
/// vertex paired with each of them) and confirms every member of period at
/// most period_bound among the interior records at that period. Members built
/// from the vertex seed alone may be matched by the vertex record. In a vertex
/// mode throws HypothesisError unless L^m(E) begins (ends) with a lift of E.
SClosureReport s_closure_check(const LiftedVertexMap& lm, EdgeId e, std::int64_t period_bound,
                               int max_len, VertexMode mode,
                               std::size_t cap = kDefaultLengthCap);

struct OneOrbitReport {
  std::size_t cycle_length = 0;
  std::size_t rank = 0;
  std::optional<EdgeId> fixed_edge;
  std::optional<PeriodicPointRecord> fixed_point;
  bool rerooted = false;
  Word w1;
  Word w2;
  bool distinct = false;
  std::vector<EdgeId> non_belonging;
  bool hypotheses_hold = false;
  std::optional<EdgeClassification> classification;
  PredictionSet predictions;
  std::vector<PredictionCheck> checks;
};

/// Throws HypothesisError unless sigma is one cycle and the rank is at least 2.
OneOrbitReport one_orbit_analysis(const LiftedVertexMap& lm, std::int64_t max_denominator = 4,
                                  std::int64_t period_bound = 8,
                                  std::size_t cap = kDefaultLengthCap);

}  // namespace rotelt
