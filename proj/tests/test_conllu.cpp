#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"
#include "udkit/conllu.hpp"

using namespace udkit;

TEST_CASE("parse minimal well-formed file") {
  Treebank tb = parse_conllu("1\tHi\t_\tINTJ\t_\t_\t0\troot\t_\t_\n\n");
  REQUIRE(tb.size() == 1);
  const Sentence& s = tb.sentences[0];
  REQUIRE(s.size() == 1);
  CHECK(s.token(1).form == "Hi");
  CHECK(s.token(1).upos == "INTJ");
  CHECK(s.token(1).head == 0);
  CHECK(s.token(1).deprel == "root");
  CHECK(s.token(1).lemma.empty());
}

TEST_CASE("parse the Fig. 1a sentence") {
  std::string text =
      "1\tShe\t_\tPRON\t_\t_\t2\tnsubj\t_\t_\n"
      "2\twrote\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
      "3\tme\t_\tPRON\t_\t_\t2\tiobj\t_\t_\n"
      "4\ta\t_\tDET\t_\t_\t5\tdet\t_\t_\n"
      "5\tletter\t_\tNOUN\t_\t_\t2\tobj\t_\t_\n\n";
  Treebank tb = parse_conllu(text);
  REQUIRE(tb.size() == 1);
  const Sentence& s = tb.sentences[0];
  std::vector<int> heads;
  std::vector<std::string> deprels;
  for (const Token& t : s.tokens) {
    heads.push_back(t.head);
    deprels.push_back(t.deprel);
  }
  CHECK(heads == std::vector<int>{2, 0, 2, 5, 2});
  CHECK(deprels == std::vector<std::string>{"nsubj", "root", "iobj", "det", "obj"});
  CHECK(validate_tree(s, ValidateLevel::structure).ok);
  CHECK(validate_tree(s, ValidateLevel::convention).ok);
  CHECK(is_projective(s));
}

TEST_CASE("parse errors carry line numbers") {
  SECTION("self-loop") {
    auto text = "1\ta\t_\tX\t_\t_\t1\tdep\t_\t_\n\n";
    REQUIRE_THROWS_WITH(parse_conllu(text), Catch::Matchers::ContainsSubstring("self-loop at line 1"));
  }
  SECTION("wrong column count") {
    auto text = "1\ta\t_\tX\n\n";
    REQUIRE_THROWS_WITH(parse_conllu(text), Catch::Matchers::ContainsSubstring("10 columns"));
  }
  SECTION("gapped ids") {
    auto text =
        "1\ta\t_\tX\t_\t_\t0\troot\t_\t_\n"
        "3\tb\t_\tX\t_\t_\t1\tdep\t_\t_\n\n";
    REQUIRE_THROWS_WITH(parse_conllu(text), Catch::Matchers::ContainsSubstring("out of sequence"));
  }
  SECTION("non-integer head") {
    auto text = "1\ta\t_\tX\t_\t_\tx\tdep\t_\t_\n\n";
    REQUIRE_THROWS_WITH(parse_conllu(text), Catch::Matchers::ContainsSubstring("non-integer head"));
  }
  SECTION("cycle") {
    auto text =
        "1\ta\t_\tX\t_\t_\t2\tdep\t_\t_\n"
        "2\tb\t_\tX\t_\t_\t3\tdep\t_\t_\n"
        "3\tc\t_\tX\t_\t_\t1\tdep\t_\t_\n\n";
    REQUIRE_THROWS_WITH(parse_conllu(text), Catch::Matchers::ContainsSubstring("cycle"));
  }
  SECTION("skip-sentence mode keeps the good ones") {
    std::string text =
        "1\ta\t_\tX\t_\t_\t1\tdep\t_\t_\n"
        "\n"
        "1\tb\t_\tX\t_\t_\t0\troot\t_\t_\n"
        "\n";
    std::vector<ParseIssue> issues;
    Treebank tb = parse_conllu(text, "und", ErrorPolicy::skip_sentence, &issues);
    REQUIRE(tb.size() == 1);
    CHECK(tb.sentences[0].token(1).form == "b");
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].line == 1);
  }
}

TEST_CASE("feats are canonicalized and idempotent") {
  auto f = parse_feats("Number=Sing|Case=Nom");
  REQUIRE(f.size() == 2);
  CHECK(f[0].first == "Case");
  CHECK(f[1].first == "Number");
  CHECK(feats_to_string(f) == "Case=Nom|Number=Sing");
  // canonicalize twice = once
  CHECK(parse_feats(feats_to_string(f)) == f);
  CHECK(parse_feats("_").empty());
  CHECK(feats_to_string({}) == "_");
}

TEST_CASE("round-trip preserves passthrough lines verbatim") {
  std::string text =
      "# sent_id = mwt-1\n"
      "1-2\tdella\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tdi\tdi\tADP\t_\t_\t3\tcase\t_\t_\n"
      "2\tla\tla\tDET\t_\t_\t3\tdet\t_\t_\n"
      "3\tcasa\tcasa\tNOUN\t_\t_\t0\troot\t_\t_\n"
      "3.1\tnull\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "\n";
  Treebank tb = parse_conllu(text);
  REQUIRE(tb.size() == 1);
  CHECK(tb.sentences[0].size() == 3);
  CHECK(tb.sentences[0].passthrough.size() == 2);
  CHECK(serialize_conllu(tb) == text);
  CHECK(tb.sentences[0].sent_id() == "mwt-1");
}

TEST_CASE("serialize of empty treebank is empty") {
  CHECK(serialize_conllu(Treebank{}).empty());
}

TEST_CASE("round-trip property on random trees") {
  auto trees = testutil::random_tree_set(20260810, 200, 12, 0.3);
  Treebank tb;
  tb.sentences = trees;
  std::string text = serialize_conllu(tb);
  Treebank back = parse_conllu(text);
  REQUIRE(back.size() == tb.size());
  for (std::size_t i = 0; i < tb.size(); ++i) {
    CHECK(back.sentences[i] == tb.sentences[i]);
  }
  CHECK(serialize_conllu(back) == text);
}

TEST_CASE("random tree generator yields structure-valid sentences") {
  auto trees = testutil::random_tree_set(99, 300, 12, 0.3);
  int nonproj = 0;
  for (const auto& s : trees) {
    REQUIRE(validate_tree(s, ValidateLevel::structure).ok);
    if (!is_projective(s)) ++nonproj;
  }
  CHECK(nonproj >= 90);  // generator must cover the non-projective regime
}

TEST_CASE("validate_tree levels") {
  SECTION("rootless predicted tree: structure ok, convention violated") {
    auto s = testutil::make_sentence({2, 0, 2}, {"det", "nsubj", "obj"});
    CHECK(validate_tree(s, ValidateLevel::structure).ok);
    auto rep = validate_tree(s, ValidateLevel::convention);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.issues[0].find("rootless") != std::string::npos);
  }
  SECTION("cycle reported") {
    udkit::Sentence s = testutil::make_sentence({2, 3, 1});
    auto rep = validate_tree(s, ValidateLevel::structure);
    REQUIRE_FALSE(rep.ok);
    bool has_cycle = false;
    for (auto& m : rep.issues) has_cycle |= m.find("cycle") != std::string::npos;
    CHECK(has_cycle);
  }
  SECTION("all violations reported, not just the first") {
    // two head-0 tokens and a root-labeled non-root token
    auto s = testutil::make_sentence({0, 0, 2}, {"root", "nsubj", "root"});
    auto rep = validate_tree(s, ValidateLevel::convention);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.issues.size() >= 2);
  }
}

TEST_CASE("is_projective matches the spec examples") {
  CHECK(is_projective(testutil::fig1a()));
  // arcs 2->4 and 3->1 cross
  auto s = testutil::make_sentence({3, 4, 0, 2});
  CHECK_FALSE(is_projective(s));
  // any 2-token tree is projective
  CHECK(is_projective(testutil::make_sentence({0, 1})));
  CHECK(is_projective(testutil::make_sentence({2, 0})));
}

TEST_CASE("is_projective agrees with O(n^4) brute force") {
  auto trees = testutil::random_tree_set(4242, 400, 12, 0.3);
  for (const auto& s : trees) {
    CHECK(is_projective(s) == testutil::brute_force_projective(s));
  }
}
