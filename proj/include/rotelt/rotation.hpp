#pragma once

#include "rotelt/rational.hpp"
#include "rotelt/word.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rotelt {

/// A single-base rational power u^e in the free Q-group, kept in normal form:
/// u is primitive and e > 0. The identity carries no base or exponent.
class RotationElement {
 public:
  RotationElement() = default;

  static RotationElement identity() { return {}; }

  /// Canonical form of base^exponent for any word and any rational.
  static RotationElement power(const Word& base, const Rational& exponent);

  bool is_identity() const { return base_.empty(); }
  const Word& base() const { return base_; }
  /// Zero for the identity.
  const Rational& exponent() const { return exponent_; }

  bool operator==(const RotationElement& other) const {
    return base_ == other.base_ && exponent_ == other.exponent_;
  }
  bool operator<(const RotationElement& other) const;

 private:
  Word base_;
  Rational exponent_{0};
};

/// The rotation element w^{1/n} for a point with f^n(x) lifting to w x.
RotationElement normalize_rot(const Word& w, std::int64_t n);

/// Exponents equal and bases conjugate.
bool conjugacy_equal(const RotationElement& a, const RotationElement& b);

/// The primitive w with w1 = w^k1 and w2 = w^k2, when it exists.
std::optional<Word> common_primitive(const Word& w1, const Word& w2);

/// Rotation data before normalization: f^period lifts x to word * x.
struct RawRotation {
  Word word;
  std::int64_t period = 1;
};

/// One member of the S-set together with the data that realizes it.
struct SMember {
  RotationElement element;
  Word word;
  std::int64_t period = 0;  // r*m + s*n
  int r = 0;
  int s = 0;
};

/// Every product of up to max_len factors from {w1, w2}, with its realized
/// period; duplicates of (element, period) are merged.
std::vector<SMember> generate_s_members(const RawRotation& x, const RawRotation& y,
                                        int max_len);

std::set<RotationElement> generate_S(const RawRotation& x, const RawRotation& y,
                                     int max_len);

/// "1" for the identity, otherwise "base^p/q" (or "base^p" for integers); longer bases are parenthesized.
std::string format(const RotationElement& r, const Alphabet& alphabet);
RotationElement parse_rotation(std::string_view text, const Alphabet& alphabet);

}  // namespace rotelt
