#include <doctest.h>

#include <set>

#include "braille/decode.hpp"
#include "oracles.hpp"

using namespace braille;

namespace {

const Decoder& english(int grade) {
  static const Decoder g1(load_shipped_table(Language::english, 1));
  static const Decoder g2(load_shipped_table(Language::english, 2));
  return grade == 1 ? g1 : g2;
}

DotPattern cell(std::string_view keys) { return canonicalize(keys).pattern(); }

std::string read(const Decoder& d, std::initializer_list<std::string_view> keys) {
  PatternRow row;
  for (auto k : keys) row.push_back(cell(k));
  return d.text(PatternRows{row});
}

}  // namespace

TEST_CASE("canonicalize") {
  CHECK(canonicalize("7185").digits() == "7851");
  CHECK(canonicalize("5817").digits() == "7851");
  CHECK(canonicalize("47").digits() == "74");
  CHECK(canonicalize("4182").digits() == "8412");
  CHECK(canonicalize("").empty());
  CHECK_THROWS_AS(canonicalize("79"), Error);
  CHECK_THROWS_AS(canonicalize("77"), Error);
  CHECK_THROWS_AS(canonicalize("3"), Error);
}

TEST_CASE("pattern_to_canonical follows the keypad picture") {
  CHECK(pattern_to_canonical(DotPattern::from_dots("1")).digits() == "7");
  CHECK(pattern_to_canonical(DotPattern::from_dots("123456")).digits() == "784512");
  CHECK(pattern_to_canonical(DotPattern{}).digits().empty());
  std::set<std::string> seen;
  for (int v = 0; v < 64; ++v) {
    const CanonicalSeq s = pattern_to_canonical(DotPattern(v));
    CHECK(s.digits() == canonicalize(oracle::keys_for_pattern(v)).digits());
    CHECK(s.pattern() == DotPattern(v));
    seen.insert(s.digits());
  }
  CHECK(seen.size() == 64);
}

TEST_CASE("table parsing") {
  const MappingTable t = parse_table("# comment\n\n47\tletter\tb\n4\tpunctuation\t,\n", Language::english, 1);
  REQUIRE(t.entries.size() == 2);
  CHECK(t.entries[0].seq.digits() == "74");
  CHECK(t.entries[1].cls == EntryClass::punctuation);
  CHECK_THROWS_AS(parse_table("79\tletter\tx\n", Language::english, 1), Error);
  CHECK_THROWS_AS(parse_table("7\tnoun\tx\n", Language::english, 1), Error);
  CHECK_THROWS_AS(parse_table("7\tletter\n", Language::english, 1), Error);
  CHECK_THROWS_AS(load_table_file("/nonexistent/table.tsv", Language::english, 1), Error);
}

TEST_CASE("trie") {
  SUBCASE("empty table misses everything") {
    const DecodeTrie trie = DecodeTrie::build(MappingTable{});
    CHECK(trie.node_count() == 1);
    for (int v = 0; v < 64; ++v) CHECK(trie.lookup(pattern_to_canonical(DotPattern(v))).empty());
  }
  SUBCASE("duplicate (seq, class) is rejected") {
    const MappingTable t = parse_table("7\tletter\ta\n7\tletter\tb\n", Language::english, 1);
    CHECK_THROWS_AS(DecodeTrie::build(t), Error);
  }
  SUBCASE("Table 1 letters are all reachable") {
    const DecodeTrie& trie = english(1).trie();
    int letters = 0;
    for (int v = 0; v < 64; ++v) {
      for (const auto& e : trie.lookup(pattern_to_canonical(DotPattern(v)))) letters += e.cls == EntryClass::letter;
    }
    CHECK(letters == 26);
    CHECK(trie.lookup(canonicalize("7845")).front().grapheme == "g");
    CHECK(trie.lookup(canonicalize("784512")).empty());
  }
  SUBCASE("b and but share a node") {
    std::set<std::string> got;
    for (const auto& e : english(2).trie().lookup(canonicalize("74"))) {
      if (e.cls == EntryClass::letter || e.cls == EntryClass::contraction) got.insert(e.grapheme);
    }
    CHECK(got == std::set<std::string>{"b", "but"});
  }
  SUBCASE("lookup equals a linear scan for every sequence of every shipped table") {
    for (auto [lang, grade] : {std::pair{Language::english, 1}, {Language::english, 2}, {Language::hindi, 1},
                               {Language::tamil, 1}}) {
      const MappingTable table = load_shipped_table(lang, grade);
      const DecodeTrie trie = DecodeTrie::build(table);
      for (int v = 0; v < 64; ++v) {
        const std::string digits = pattern_to_canonical(DotPattern(v)).digits();
        const auto got = trie.lookup(pattern_to_canonical(DotPattern(v)));
        const auto want = oracle::linear_lookup(table, digits);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
          CHECK(got[i].grapheme == want[i].grapheme);
          CHECK(got[i].cls == want[i].cls);
        }
      }
    }
  }
}

TEST_CASE("decode_cells rules") {
  const Decoder& g2 = english(2);
  CHECK(read(g2, {"7"}) == "a");
  CHECK(read(g2, {"", "74", ""}) == " but ");
  CHECK(read(g2, {"74"}) == "but");
  CHECK(read(g2, {"74", "7"}) == "ba");
  CHECK(read(g2, {"8512", "7"}) == "1");
  CHECK(read(g2, {"8512", "74", "78", "7"}) == "231");
  CHECK(read(g2, {"8512", "7", "", "7"}) == "1 a");
  CHECK(read(g2, {"8512", "7", "71"}) == "1k");  // k has no digit reading
  CHECK(read(g2, {""}) == " ");
  CHECK(read(g2, {"7", "4"}) == "a,");            // ',' at a word end
  CHECK(read(g2, {"8451", "4", "7451"}) == "tear");  // 'ea' inside a word
  CHECK(read(g2, {"41"}) == ";");
  CHECK(read(g2, {"7", "41", "7"}) == "abea");
  CHECK(read(g2, {"4182", "7451", "75"}) == "there");
  CHECK(read(english(1), {"74"}) == "b");

  SUBCASE("unmapped cells become U+FFFD and are counted") {
    const DecodeResult r = english(1).decode(PatternRows{{cell("7"), cell("784512"), cell("7")}});
    CHECK(r.unmapped == 1);
    CHECK(compose_text(r.tokens, Language::english) == "a\xEF\xBF\xBD" "a");
  }
  SUBCASE("one token per cell plus line breaks") {
    for (int v = 0; v < 64; ++v) {
      const PatternRows rows{{DotPattern(v), DotPattern(static_cast<std::uint8_t>(63 - v))}, {DotPattern(v)}};
      const DecodeResult r = g2.decode(rows);
      CHECK(r.cells == 3);
      CHECK(r.tokens.size() == 4);
      CHECK(r.tokens[2].kind == TokenKind::line_break);
    }
  }
}

TEST_CASE("Indic composition") {
  const Decoder hi(load_shipped_table(Language::hindi, 1));
  const Decoder ta(load_shipped_table(Language::tamil, 1));
  const auto keys_of = [](const Decoder& d, std::string_view grapheme, IndicRole role) {
    for (const auto& e : d.table().entries) {
      if (e.grapheme == grapheme && e.role == role) return e.seq.pattern();
    }
    FAIL("missing grapheme");
    return DotPattern{};
  };
  const DotPattern ka = keys_of(hi, "क", IndicRole::consonant);
  const DotPattern aa = keys_of(hi, "आ", IndicRole::vowel);
  const DotPattern a = keys_of(hi, "अ", IndicRole::vowel);
  const DotPattern ii = keys_of(hi, "ई", IndicRole::vowel);
  CHECK(hi.text(PatternRows{{ka, aa}}) == "का");
  CHECK(hi.text(PatternRows{{aa}}) == "आ");
  CHECK(hi.text(PatternRows{{ka, a}}) == "क");
  CHECK(hi.text(PatternRows{{ka, a, ii}}) == "कई");
  CHECK(hi.text(PatternRows{{ka, DotPattern{}, aa}}) == "क आ");

  const DotPattern tka = keys_of(ta, "க", IndicRole::consonant);
  const DotPattern o = keys_of(ta, "ஒ", IndicRole::vowel);
  CHECK(ta.text(PatternRows{{tka, o}}) == "கொ");

  SUBCASE("English tokens pass through") {
    const DecodeResult r = english(2).decode(PatternRows{{cell("745"), cell("84")}});
    CHECK(compose_indic(r.tokens, Language::english) == "hi");
  }
}
