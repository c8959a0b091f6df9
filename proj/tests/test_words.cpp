#include <doctest.h>

#include <stdexcept>

#include "sl2flow/series.hpp"
#include "sl2flow/word.hpp"

using namespace sl2flow;

TEST_SUITE("words") {

TEST_CASE("parse and str round-trip") {
  CHECK(Word().str() == "");
  CHECK(Word::parse("").empty());
  for (const char* s : {"a", "b", "c", "ab", "abc", "aacbc", "abbbbbbbbbbbbc"}) {
    Word w = Word::parse(s);
    CHECK(w.str() == s);
    CHECK(w.length() == static_cast<int>(std::string(s).size()));
  }
}

TEST_CASE("parse rejects bad input") {
  CHECK_THROWS_AS(Word::parse("abd"), std::invalid_argument);
  CHECK_THROWS_AS(Word::parse("A"), std::invalid_argument);
  CHECK_THROWS_AS(Word::parse("abcabcabcabcabc"), std::length_error);  // 15 letters
}

TEST_CASE("letter access") {
  Word w = Word::parse("acb");
  CHECK(w.front() == Letter::A);
  CHECK(w.back() == Letter::B);
  CHECK(w.letter(1) == Letter::C);
  CHECK(w.count(Letter::A) == 1);
  CHECK(w.count(Letter::B) == 1);
  CHECK(w.count(Letter::C) == 1);
  CHECK(Word::parse("aabca").count(Letter::A) == 3);
}

TEST_CASE("append, prefix, drop_front") {
  Word w;
  w = w.append(Letter::A).append(Letter::B).append(Letter::C);
  CHECK(w == Word::parse("abc"));
  CHECK(w.prefix() == Word::parse("ab"));
  CHECK(w.prefix().prefix().prefix() == Word());
  CHECK(Word().prefix() == Word());
  CHECK(w.drop_front() == Word::parse("bc"));
  CHECK(Word::parse("a").drop_front() == Word());
}

TEST_CASE("concat and capacity") {
  CHECK(concat(Word::parse("ab"), Word::parse("ca")) == Word::parse("abca"));
  CHECK(concat(Word(), Word::parse("b")) == Word::parse("b"));
  Word full = Word::parse("aaaaaaaaaaaaaa");  // 14 letters
  CHECK(full.length() == Word::kMaxLength);
  CHECK_THROWS_AS(full.append(Letter::A), std::length_error);
  CHECK_THROWS_AS(concat(full, Word::parse("a")), std::length_error);
}

TEST_CASE("(length, lex) order") {
  auto lt = [](const char* x, const char* y) { return Word::parse(x) < Word::parse(y); };
  CHECK(lt("", "a"));
  CHECK(lt("a", "b"));
  CHECK(lt("b", "c"));
  CHECK(lt("c", "aa"));
  CHECK(lt("b", "ab"));  // shorter first, regardless of letters
  CHECK(lt("aacc", "abbc"));
  CHECK(lt("aabcc", "aacbc"));
  CHECK(lt("aacbc", "abacc"));
  CHECK(!lt("abc", "abc"));
}

TEST_CASE("lex_rank within a length") {
  CHECK(Word::parse("aa").lex_rank() == 0);
  CHECK(Word::parse("ac").lex_rank() == 2);
  CHECK(Word::parse("ba").lex_rank() == 3);
  CHECK(Word::parse("cc").lex_rank() == 8);
}

TEST_CASE("reversed and flipped") {
  CHECK(reversed(Word::parse("abc")) == Word::parse("cba"));
  CHECK(reversed(Word()) == Word());
  CHECK(flipped(Word::parse("abc")) == Word::parse("cba"));
  CHECK(flipped(Word::parse("aabcc")) == Word::parse("ccbaa"));
  Word w = Word::parse("acbbca");
  CHECK(reversed(reversed(w)) == w);
  CHECK(flipped(flipped(w)) == w);
}

}  // TEST_SUITE
