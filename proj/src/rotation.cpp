#include "rotelt/rotation.hpp"

#include <map>
#include <stdexcept>

namespace rotelt {

RotationElement RotationElement::power(const Word& base, const Rational& exponent) {
  RotationElement out;
  if (base.empty() || exponent == 0) return out;
  const PrimitiveRoot pr = primitive_root(base);
  Rational e = exponent * pr.exponent;
  Word root = pr.root;
  if (e < 0) {
    e = -e;
    root = invert(root);
  }
  out.base_ = std::move(root);
  out.exponent_ = std::move(e);
  return out;
}

bool RotationElement::operator<(const RotationElement& other) const {
  if (auto c = base_ <=> other.base_; c != 0) return c < 0;
  return exponent_ < other.exponent_;
}

RotationElement normalize_rot(const Word& w, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("period must be positive");
  return RotationElement::power(w, make_rational(1, n));
}

bool conjugacy_equal(const RotationElement& a, const RotationElement& b) {
  if (a.is_identity() || b.is_identity()) return a.is_identity() && b.is_identity();
  return a.exponent() == b.exponent() && are_conjugate(a.base(), b.base());
}

std::optional<Word> common_primitive(const Word& w1, const Word& w2) {
  if (w1.empty() && w2.empty()) return std::nullopt;
  if (w1.empty()) return primitive_root(w2).root;
  if (w2.empty()) return primitive_root(w1).root;
  const Word u1 = primitive_root(w1).root;
  const Word u2 = primitive_root(w2).root;
  if (u1 == u2 || u1 == invert(u2)) return u1;
  return std::nullopt;
}

std::vector<SMember> generate_s_members(const RawRotation& x, const RawRotation& y,
                                        int max_len) {
  if (max_len < 1) throw std::invalid_argument("max_len must be at least 1");
  std::map<std::pair<RotationElement, std::int64_t>, SMember> found;
  // Level-by-level extension of all sequences v_1 ... v_l.
  struct Partial {
    Word word;
    int r;
    int s;
  };
  std::vector<Partial> level{{Word{}, 0, 0}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Partial> next;
    next.reserve(level.size() * 2);
    for (const auto& p : level) {
      next.push_back({concat_reduce(p.word, x.word), p.r + 1, p.s});
      next.push_back({concat_reduce(p.word, y.word), p.r, p.s + 1});
    }
    for (const auto& p : next) {
      const std::int64_t period = p.r * x.period + p.s * y.period;
      SMember m{normalize_rot(p.word, period), p.word, period, p.r, p.s};
      found.try_emplace({m.element, period}, std::move(m));
    }
    level = std::move(next);
  }
  std::vector<SMember> out;
  out.reserve(found.size());
  for (auto& [key, m] : found) out.push_back(std::move(m));
  return out;
}

std::set<RotationElement> generate_S(const RawRotation& x, const RawRotation& y,
                                     int max_len) {
  std::set<RotationElement> out;
  for (const auto& m : generate_s_members(x, y, max_len)) out.insert(m.element);
  return out;
}

std::string format(const RotationElement& r, const Alphabet& alphabet) {
  if (r.is_identity()) return "1";
  const std::string base = alphabet.format(r.base());
  return (r.base().size() > 1 ? "(" + base + ")" : base) + "^" + to_string(r.exponent());
}

RotationElement parse_rotation(std::string_view text, const Alphabet& alphabet) {
  if (text == "1") return RotationElement::identity();
  const auto caret = text.find('^');
  if (caret == std::string_view::npos) {
    return RotationElement::power(alphabet.parse(text), 1);
  }
  std::string_view base_text = text.substr(0, caret);
  if (base_text.size() >= 2 && base_text.front() == '(' && base_text.back() == ')') {
    base_text = base_text.substr(1, base_text.size() - 2);
  }
  const Word base = alphabet.parse(base_text);
  const std::string exp(text.substr(caret + 1));
  const auto slash = exp.find('/');
  std::int64_t p = 0;
  std::int64_t q = 1;
  try {
    p = std::stoll(exp.substr(0, slash));
    if (slash != std::string::npos) q = std::stoll(exp.substr(slash + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed exponent '" + exp + "'");
  }
  if (q == 0) throw std::invalid_argument("zero denominator in '" + exp + "'");
  return RotationElement::power(base, make_rational(p, q));
}

}  // namespace rotelt
