#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sl2flow {

// The three generator letters. The ordering a < b < c is the letter order used
// for lexicographic comparisons; it is unrelated to the Hall-word order.
enum class Letter : std::uint8_t { A = 0, B = 1, C = 2 };

inline char to_char(Letter l) { return static_cast<char>('a' + static_cast<int>(l)); }

inline Letter letter_from_char(char ch) {
  if (ch < 'a' || ch > 'c') throw std::invalid_argument(std::string("bad letter '") + ch + "'");
  return static_cast<Letter>(ch - 'a');
}

// A word over {a,b,c}, at most kMaxLength letters, packed into one uint32:
// bits 0..3 hold the length, bits 4+2i..5+2i hold letter i (front = i = 0).
// Value type; the default-constructed word is the empty word.
class Word {
public:
  static constexpr int kMaxLength = 14;

  constexpr Word() = default;
  constexpr explicit Word(Letter l) : bits_(1u | (static_cast<std::uint32_t>(l) << 4)) {}

  static Word parse(std::string_view s) {
    if (s.size() > kMaxLength) throw std::length_error("word longer than " + std::to_string(kMaxLength));
    Word w;
    for (char ch : s) w = w.append(letter_from_char(ch));
    return w;
  }

  int length() const { return static_cast<int>(bits_ & 0xFu); }
  bool empty() const { return bits_ == 0; }

  Letter letter(int i) const {
    return static_cast<Letter>((bits_ >> (4 + 2 * i)) & 0x3u);
  }
  Letter front() const { return letter(0); }
  Letter back() const { return letter(length() - 1); }

  Word append(Letter l) const {
    int n = length();
    if (n >= kMaxLength) throw std::length_error("word capacity exceeded");
    Word w;
    w.bits_ = (bits_ & ~0xFu) | static_cast<std::uint32_t>(n + 1)
            | (static_cast<std::uint32_t>(l) << (4 + 2 * n));
    return w;
  }

  // Longest proper prefix (drop the last letter). Empty word maps to itself.
  Word prefix() const {
    int n = length();
    if (n == 0) return Word();
    Word w;
    std::uint32_t mask = (n == 1) ? 0u : ((1u << (4 + 2 * (n - 1))) - 1u) & ~0xFu;
    w.bits_ = (bits_ & mask) | static_cast<std::uint32_t>(n - 1);
    return w;
  }

  // Drop the first letter.
  Word drop_front() const {
    int n = length();
    if (n == 0) return Word();
    Word w;
    w.bits_ = ((bits_ >> 6) << 4) | static_cast<std::uint32_t>(n - 1);
    std::uint32_t keep = (n == 1) ? 0xFu : ((1u << (4 + 2 * (n - 1))) - 1u);
    w.bits_ &= keep;
    return w;
  }

  int count(Letter l) const {
    int c = 0;
    for (int i = 0, n = length(); i < n; ++i) c += (letter(i) == l);
    return c;
  }

  std::string str() const {
    std::string s;
    for (int i = 0, n = length(); i < n; ++i) s += to_char(letter(i));
    return s;
  }

  // Rank of this word among all words of the same length, in lexicographic
  // order (front letter most significant). Used for dense per-length tables.
  std::size_t lex_rank() const {
    std::size_t r = 0;
    for (int i = 0, n = length(); i < n; ++i) r = r * 3 + static_cast<std::size_t>(letter(i));
    return r;
  }

  std::uint32_t packed() const { return bits_; }

  friend bool operator==(Word a, Word b) { return a.bits_ == b.bits_; }
  friend bool operator!=(Word a, Word b) { return a.bits_ != b.bits_; }

  // (length, lexicographic) order; this is the sort order for series terms.
  friend std::strong_ordering operator<=>(Word a, Word b) {
    int na = a.length(), nb = b.length();
    if (na != nb) return na <=> nb;
    for (int i = 0; i < na; ++i) {
      auto la = static_cast<int>(a.letter(i)), lb = static_cast<int>(b.letter(i));
      if (la != lb) return la <=> lb;
    }
    return std::strong_ordering::equal;
  }

private:
  std::uint32_t bits_ = 0;
};

inline Word concat(Word u, Word v) {
  int n = u.length() + v.length();
  if (n > Word::kMaxLength) throw std::length_error("concat: word capacity exceeded");
  Word w = u;
  for (int i = 0, m = v.length(); i < m; ++i) w = w.append(v.letter(i));
  return w;
}

struct WordHash {
  std::size_t operator()(Word w) const {
    std::uint64_t x = w.packed();
    x *= 0x9e3779b97f4a7c15ull;
    x ^= x >> 29;
    return static_cast<std::size_t>(x);
  }
};

namespace letters {
inline const Word a = Word(Letter::A);
inline const Word b = Word(Letter::B);
inline const Word c = Word(Letter::C);
}  // namespace letters

}  // namespace sl2flow
