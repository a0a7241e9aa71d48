#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rotelt {

/// A generator of the free group or its inverse.
class Letter {
 public:
  constexpr Letter(std::uint32_t generator, bool inverse)
      : code_(inverse ? -static_cast<std::int32_t>(generator) - 1
                      : static_cast<std::int32_t>(generator) + 1) {}

  constexpr std::uint32_t generator() const {
    return static_cast<std::uint32_t>((code_ < 0 ? -code_ : code_) - 1);
  }
  constexpr bool inverse() const { return code_ < 0; }
  constexpr Letter inverted() const { return Letter(generator(), !inverse()); }
  constexpr bool cancels(Letter other) const { return code_ == -other.code_; }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::int32_t code_;
};

/// Freely reduced word; the empty word is the identity.
class Word {
 public:
  Word() = default;
  explicit Word(Letter letter) : letters_{letter} {}

  /// Reduces the given sequence.
  static Word from_letters(const std::vector<Letter>& letters);
  static Word generator(std::uint32_t g) { return Word(Letter(g, false)); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  /// Sub-sequence [pos, pos+len); already reduced since a subword of a reduced word is.
  Word subword(std::size_t pos, std::size_t len) const;

  bool operator==(const Word&) const = default;
  /// Shortlex order.
  std::strong_ordering operator<=>(const Word& other) const;

 private:
  std::vector<Letter> letters_;
};

Word concat_reduce(const Word& u, const Word& v);
Word invert(const Word& w);
/// w^k for any integer k.
Word power(const Word& w, std::int64_t k);

struct CyclicReduction {
  Word core;
  Word conjugator;
};

/// w = conjugator * core * conjugator^-1 with core cyclically reduced.
CyclicReduction cyclically_reduce(const Word& w);

struct PrimitiveRoot {
  Word root;
  std::int64_t exponent;
};

/// w = root^exponent with root primitive and exponent >= 1 maximal.
/// Throws std::invalid_argument for the identity.
PrimitiveRoot primitive_root(const Word& w);

/// Prefixes of w from the empty word up to w, in length order.
std::vector<Word> initial_subwords(const Word& w);

bool is_prefix(const Word& prefix, const Word& w);

/// True when the two words are equal as cyclic sequences.
bool cyclic_rotation_equal(const Word& u, const Word& v);

bool are_conjugate(const Word& u, const Word& v);

/// Names of generators; words print as juxtaposed names with `~` marking inverses.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  /// a, b, ..., z, g26, g27, ...
  static std::string default_name(std::uint32_t index);
  static Alphabet with_default_names(std::size_t count);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::uint32_t g) const { return names_.at(g); }
  const std::vector<std::string>& names() const { return names_; }

  /// Empty word prints as "1".
  std::string format(const Word& w) const;
  /// Greedy longest-name match; "1" and "" parse to the identity.
  Word parse(std::string_view text) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

}  // namespace rotelt
