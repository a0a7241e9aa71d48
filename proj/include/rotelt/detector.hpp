#pragma once

#include "rotelt/vmap.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rotelt {

/// Rotation data of both ends of an edge E: V1 -> V2.
struct EndpointData {
  VertexId v1{};
  VertexId v2{};
  std::int64_t m = 1;  // period of V1
  std::int64_t n = 1;  // period of V2
  Word w1;
  Word w2;
};

EndpointData endpoint_data(const LiftedVertexMap& lm, EdgeId e);

/// Geodesic from v~ to w^k v~; empty for k = 0 or trivial w. Negative k
/// gives the reverse of the path for -k.
LiftedPath p_path(const LiftedVertexMap& lm, VertexId v, const Word& w, std::int64_t k);

/// First step is the base lift of e, in either orientation.
bool begins_with(const LiftedPath& p, EdgeId e);

/// The cyclically reduced loop of w uses e. False for the identity.
bool belongs(const CoherentLabeling& l, EdgeId e, const Word& w);

/// Prefixes of the e-steps of the geodesic from v~ to w v~, in path order
/// without repeats.
std::vector<Word> occurrence_prefixes(const LiftedVertexMap& lm, EdgeId e, VertexId v,
                                      const Word& w);

/// Initial subwords gamma of w with gamma e~ on the geodesic from v~ to w v~,
/// kept when w^i gamma e~ lies on the k-th power path exactly for 0 <= i < k
/// (checked for k <= 3). Throws std::invalid_argument when e does not belong to w.
std::vector<Word> gamma_words(const LiftedVertexMap& lm, EdgeId e, VertexId v, const Word& w);

enum class Regime { FpNeither, FpBoth, OneBegins };

enum class EdgeCase {
  FpNeither,
  FpBoth,
  BelongsOne,
  BelongsBothNeitherBegin,
  BelongsBothBothBegin,
  CommonRootInterval,
  BelongsBothNotPowers,
  NoGuarantee,
};

std::string to_string(Regime r);
std::string to_string(EdgeCase c);

struct CommonRoot {
  Word root;
  std::int64_t k1 = 0;
  std::int64_t k2 = 0;
};

struct CaseFlags {
  bool begins1 = false;
  bool begins2 = false;
  bool belongs1 = false;
  bool belongs2 = false;
  bool common_root = false;
  bool belongs_root = false;
};

struct CaseDecision {
  Regime regime = Regime::FpNeither;
  EdgeCase edge_case = EdgeCase::FpNeither;
  int side = 0;  // 1 or 2 for BelongsOne
};

/// The decision table; total over all flag tuples.
CaseDecision decide_case(const CaseFlags& f);

struct EdgeClassification {
  LiftedVertexMap map;  // the analysis map; e is a tree edge of its labeling
  bool rerooted = false;
  EdgeId edge{};
  EndpointData ends;
  CaseFlags flags;
  std::optional<CommonRoot> common_root;
  CaseDecision decision;
  std::vector<Word> gamma1;  // present when e belongs to w1
  std::vector<Word> gamma2;
};

/// Re-roots over a tree containing e when e is not a tree edge. Requires the
/// trivial shift.
EdgeClassification classify_edge(const LiftedVertexMap& lm, EdgeId e);

struct Prediction {
  RotationElement element;
  std::int64_t period_witness = 1;
  std::string source;
  std::optional<Word> gamma;
  int side = 0;   // 0 for fixed-point predictions
  Rational r{0};  // the rational the theorem is applied to
  std::int64_t p = 0;
  std::int64_t q = 1;
  Word word;  // w^p gamma
};

/// Symbolic description of an infinite guaranteed family.
struct PredictionFamily {
  std::string source;
  int side = 0;
  std::string element_form;
  Rational lower{0};
  Rational upper{0};
  bool lower_closed = false;
  bool upper_closed = false;
  Word base;
  std::optional<Word> gamma;
};

struct PredictionSet {
  std::vector<Prediction> predictions;
  std::vector<PredictionFamily> families;
};

/// One prediction per element, tagged with the first family that yields it.
PredictionSet predicted_elements(const EdgeClassification& c, std::int64_t max_denominator);

/// Contraction of P1^{-kn} E~ P2^{km} on the analysis map (e must be a tree edge).
LiftedPath contraction_witness(const LiftedVertexMap& lm, EdgeId e, std::int64_t k);

struct Detection {
  Word gamma;
  Orientation orientation = Orientation::Forward;
  RotationElement element;
};

/// Every gamma e~ on contraction_witness, mapped to gamma^{1/kmn}.
std::vector<Detection> detect_in_contraction(const LiftedVertexMap& lm, EdgeId e, std::int64_t k);

}  // namespace rotelt
