#include "rotelt/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace rotelt {

Word Word::from_letters(const std::vector<Letter>& letters) {
  Word out;
  out.letters_.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.letters_.empty() && out.letters_.back().cancels(l)) {
      out.letters_.pop_back();
    } else {
      out.letters_.push_back(l);
    }
  }
  return out;
}

Word Word::subword(std::size_t pos, std::size_t len) const {
  Word out;
  out.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                      letters_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return out;
}

std::strong_ordering Word::operator<=>(const Word& other) const {
  if (auto c = letters_.size() <=> other.letters_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(letters_.begin(), letters_.end(),
                                                other.letters_.begin(),
                                                other.letters_.end());
}

Word concat_reduce(const Word& u, const Word& v) {
  const auto& a = u.letters();
  const auto& b = v.letters();
  std::size_t i = a.size();
  std::size_t j = 0;
  while (i > 0 && j < b.size() && a[i - 1].cancels(b[j])) {
    --i;
    ++j;
  }
  std::vector<Letter> out;
  out.reserve(i + (b.size() - j));
  out.insert(out.end(), a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i));
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(j), b.end());
  // Both halves are reduced and the junction no longer cancels.
  return Word::from_letters(out);
}

Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverted());
  }
  return Word::from_letters(out);
}

Word power(const Word& w, std::int64_t k) {
  const Word base = k < 0 ? invert(w) : w;
  const std::int64_t count = k < 0 ? -k : k;
  // Square-and-multiply keeps reductions cheap for cyclically reduced bases
  // and is still correct for arbitrary ones.
  Word result;
  Word acc = base;
  std::int64_t e = count;
  while (e > 0) {
    if (e & 1) result = concat_reduce(result, acc);
    e >>= 1;
    if (e > 0) acc = concat_reduce(acc, acc);
  }
  return result;
}

CyclicReduction cyclically_reduce(const Word& w) {
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo].cancels(w[hi - 1])) {
    ++lo;
    --hi;
  }
  return {w.subword(lo, hi - lo), w.subword(0, lo)};
}

PrimitiveRoot primitive_root(const Word& w) {
  if (w.empty()) throw std::invalid_argument("identity has no primitive root");
  const auto [core, conj] = cyclically_reduce(w);
  const std::size_t len = core.size();
  for (std::size_t period = 1; period <= len; ++period) {
    if (len % period != 0) continue;
    bool periodic = true;
    for (std::size_t i = period; i < len && periodic; ++i) {
      periodic = core[i] == core[i - period];
    }
    if (periodic) {
      const Word root = concat_reduce(concat_reduce(conj, core.subword(0, period)),
                                      invert(conj));
      return {root, static_cast<std::int64_t>(len / period)};
    }
  }
  return {w, 1};  // unreachable: period == len always succeeds
}

std::vector<Word> initial_subwords(const Word& w) {
  std::vector<Word> out;
  out.reserve(w.size() + 1);
  for (std::size_t i = 0; i <= w.size(); ++i) out.push_back(w.subword(0, i));
  return out;
}

bool is_prefix(const Word& prefix, const Word& w) {
  if (prefix.size() > w.size()) return false;
  return std::equal(prefix.letters().begin(), prefix.letters().end(),
                    w.letters().begin());
}

bool cyclic_rotation_equal(const Word& u, const Word& v) {
  if (u.size() != v.size()) return false;
  if (u.empty()) return true;
  const std::size_t n = u.size();
  for (std::size_t shift = 0; shift < n; ++shift) {
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) same = u[(i + shift) % n] == v[i];
    if (same) return true;
  }
  return false;
}

bool are_conjugate(const Word& u, const Word& v) {
  return cyclic_rotation_equal(cyclically_reduce(u).core, cyclically_reduce(v).core);
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::uint32_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty() || names_[i] == "1" || names_[i].find('~') != std::string::npos) {
      throw std::invalid_argument("invalid generator name '" + names_[i] + "'");
    }
    if (!index_.emplace(names_[i], i).second) {
      throw std::invalid_argument("duplicate generator name '" + names_[i] + "'");
    }
  }
}

std::string Alphabet::default_name(std::uint32_t index) {
  if (index < 26) return std::string(1, static_cast<char>('a' + index));
  return "g" + std::to_string(index);
}

Alphabet Alphabet::with_default_names(std::size_t count) {
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < count; ++i) names.push_back(default_name(i));
  return Alphabet(std::move(names));
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (Letter l : w.letters()) {
    if (l.inverse()) out += '~';
    out += name(l.generator());
  }
  return out;
}

Word Alphabet::parse(std::string_view text) const {
  if (text.empty() || text == "1") return Word{};
  std::vector<Letter> letters;
  std::size_t pos = 0;
  while (pos < text.size()) {
    bool inverse = false;
    if (text[pos] == '~') {
      inverse = true;
      ++pos;
    }
    std::size_t best_len = 0;
    std::uint32_t best = 0;
    for (const auto& [nm, idx] : index_) {
      if (nm.size() > best_len && text.substr(pos, nm.size()) == nm) {
        best_len = nm.size();
        best = idx;
      }
    }
    if (best_len == 0) {
      throw std::invalid_argument("unknown generator at '" + std::string(text.substr(pos)) +
                                  "'");
    }
    letters.emplace_back(best, inverse);
    pos += best_len;
  }
  return Word::from_letters(letters);
}

}  // namespace rotelt
