#include <random>
#include <sstream>

#include "doctest.h"
#include "polstance/error.hpp"
#include "polstance/stance.hpp"
#include "support.hpp"

using namespace polstance;

namespace {

ValenceLexicon lexicon_of(const std::string& tsv) {
  std::istringstream in(tsv);
  return parse_lexicon(in);
}

}  // namespace

TEST_CASE("parse_lexicon") {
  const auto lex = lexicon_of("gifted\t0.6\n# comment\n\nGood\t0.7\ngood\t0.5\n");
  REQUIRE(lex.find("gifted"));
  CHECK(*lex.find("gifted") == 0.6);
  CHECK(*lex.find("good") == 0.5);  // later line wins, keys lowercased
  CHECK(lex.size() == 2);
  CHECK(lexicon_of("").empty());
}

TEST_CASE("parse_lexicon errors carry the line number") {
  try {
    lexicon_of("ok\t0.1\nbad\t-2.0\n");
    FAIL("expected range error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::out_of_range);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  try {
    lexicon_of("bad\tvery\n");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
  CHECK_THROWS_AS(lexicon_of("nocolumn\n"), Error);
}

TEST_CASE("the bundled lexicon loads") {
  const auto lex = load_lexicon(POLSTANCE_SOURCE_DIR "/data/valence_lexicon.tsv");
  CHECK(lex.size() > 7000);
  REQUIRE(lex.find("good"));
  CHECK(*lex.find("good") > 0);
  REQUIRE(lex.find("corrupt"));
  CHECK(*lex.find("corrupt") < 0);
}

TEST_CASE("article_stance averages covered descriptors") {
  const auto lex = lexicon_of("gifted\t0.6\ngood\t0.7\nneutral\t0.0\n");
  DescriptorMap d;
  d["john"] = {{"gifted", DescriptorKind::Adjective}, {"good", DescriptorKind::Adjective}};
  d["mary"] = {{"unlisted", DescriptorKind::Verb}};
  d["bob"] = {{"good", DescriptorKind::Adjective}, {"neutral", DescriptorKind::Adjective},
              {"unlisted", DescriptorKind::Verb}};
  const auto s = article_stance(d, lex);
  REQUIRE(s.find("john"));
  CHECK(s.find("john")->mean == doctest::Approx(0.65));
  CHECK(s.find("john")->count == 2);
  CHECK(!s.contains("mary"));
  CHECK(s.find("bob")->mean == doctest::Approx(0.35));
  CHECK(s.find("bob")->count == 2);
}

TEST_CASE("corpus_stance is a mention-weighted merge") {
  StanceMap a, b;
  a["trump"] = {-0.8, 3};
  b["trump"] = {-0.5, 1};
  b["ira"] = {0.5, 2};
  const std::vector<StanceMap> parts = {a, b};
  const auto merged = corpus_stance(parts);
  CHECK(merged.find("trump")->mean == doctest::Approx(-0.725));
  CHECK(merged.find("trump")->count == 4);
  CHECK(merged.find("ira")->mean == 0.5);

  const std::vector<StanceMap> single = {b};
  CHECK(corpus_stance(single) == b);
  const std::vector<StanceMap> with_empty = {a, StanceMap{}, b};
  CHECK(corpus_stance(with_empty) == merged);
}

TEST_CASE("corpus_stance ignores order and grouping") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> nouns = {"a", "b", "c", "d", "e", "f"};
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<StanceMap> maps(1 + rng() % 8);
    for (auto& m : maps) {
      for (const auto& n : nouns) {
        if (rng() % 2) m[n] = {val(rng), 1 + rng() % 5};
      }
    }
    const auto whole = corpus_stance(maps);
    for (const auto& [noun, s] : whole) {
      CHECK(s.mean >= -1.0);
      CHECK(s.mean <= 1.0);
    }

    auto shuffled = maps;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto reordered = corpus_stance(shuffled);

    const std::size_t cut = rng() % (maps.size() + 1);
    const std::vector<StanceMap> left(maps.begin(), maps.begin() + static_cast<long>(cut));
    const std::vector<StanceMap> right(maps.begin() + static_cast<long>(cut), maps.end());
    const std::vector<StanceMap> grouped_parts = {corpus_stance(left), corpus_stance(right)};
    const auto grouped = corpus_stance(grouped_parts);

    for (const auto& [noun, s] : whole) {
      for (const auto* other : {&reordered, &grouped}) {
        REQUIRE(other->find(noun));
        CHECK(std::abs(other->find(noun)->mean - s.mean) <= 1e-12);
        CHECK(other->find(noun)->count == s.count);
      }
    }
    CHECK(reordered.size() == whole.size());
    CHECK(grouped.size() == whole.size());
  }
}

TEST_CASE("stance JSON keeps order and values") {
  StanceMap m;
  m["trump"] = {-0.7, 3};
  m["ira"] = {0.5, 1};
  const auto j = to_json(m);
  CHECK(j.dump() == R"({"trump":{"mean":-0.7,"count":3},"ira":{"mean":0.5,"count":1}})");
  CHECK(stance_from_json(j) == m);
}
