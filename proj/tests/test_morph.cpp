#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "testutil.hpp"
#include "udkit/morph.hpp"

using namespace udkit;

namespace {

MorphConfig always() {
  MorphConfig cfg;
  cfg.p_crop = 1.0;
  cfg.p_rotate = 1.0;
  cfg.max_crops_per_sentence = 100;
  cfg.max_rotations_per_sentence = 100;
  return cfg;
}

std::string flat(const Sentence& s) {
  std::string out;
  for (const Token& t : s.tokens) {
    out += t.form + "/" + std::to_string(t.head) + "/" + t.deprel + " ";
  }
  return out;
}

}  // namespace

TEST_CASE("crop reproduces the cropped example tree") {
  Sentence fig1a = testutil::fig1a();
  Rng rng(1);
  auto crops = crop_sentence(fig1a, always(), rng);
  REQUIRE(crops.size() == 6);  // 2^3 - 2 proper non-empty subsets
  // removing the iobj subtree: She wrote a letter, heads (2,0,4,2)
  bool found = false;
  for (const auto& c : crops)
    if (flat(c) == "She/2/nsubj wrote/0/root a/4/det letter/2/obj ") found = true;
  CHECK(found);
  // removing {nsubj, iobj}: wrote a letter, heads (0,3,1)
  bool found2 = false;
  for (const auto& c : crops)
    if (flat(c) == "wrote/0/root a/3/det letter/1/obj ") found2 = true;
  CHECK(found2);
  for (const auto& c : crops) CHECK(validate_tree(c, ValidateLevel::structure).ok);
}

TEST_CASE("crop retention rule: single core dependent yields nothing") {
  auto s = testutil::make_sentence({2, 0, 2}, {"nsubj", "root", "punct"});
  Rng rng(1);
  CHECK(crop_sentence(s, always(), rng).empty());
}

TEST_CASE("crop keeps original head tokens by identity") {
  Rng rng(77);
  MorphConfig cfg = always();
  for (int iter = 0; iter < 200; ++iter) {
    Sentence s = testutil::random_tree(rng, 2 + static_cast<int>(rng.below(9)),
                                       {"nsubj", "obj", "det", "obl", "amod"});
    Rng crng(iter);
    for (const Sentence& c : crop_sentence(s, cfg, crng)) {
      REQUIRE(validate_tree(c, ValidateLevel::structure).ok);
      // tokens are a subset of input tokens; heads map to the same token forms
      std::map<std::string, std::string> orig_head;  // form -> head form (forms unique enough? no)
      // match by walking: kept tokens in order must be a subsequence of source tokens
      std::size_t cursor = 0;
      std::vector<int> src_index(c.tokens.size() + 1, 0);
      for (const Token& t : c.tokens) {
        while (cursor < s.tokens.size() && s.tokens[cursor].form != t.form) ++cursor;
        REQUIRE(cursor < s.tokens.size());
        src_index[static_cast<std::size_t>(t.id)] = s.tokens[cursor].id;
        ++cursor;
      }
      for (const Token& t : c.tokens) {
        int src_head = t.head == 0 ? 0 : src_index[static_cast<std::size_t>(t.head)];
        CHECK(s.token(src_index[static_cast<std::size_t>(t.id)]).head == src_head);
        CHECK(s.token(src_index[static_cast<std::size_t>(t.id)]).deprel == t.deprel);
      }
    }
  }
}

TEST_CASE("rotate reproduces the rotated example tree") {
  Sentence fig1a = testutil::fig1a();
  Rng rng(1);
  auto rots = rotate_sentence(fig1a, always(), rng);
  REQUIRE(rots.size() == 23);  // 4! - 1 non-identity permutations
  bool found = false;
  for (const auto& r : rots)
    if (flat(r) == "She/3/nsubj me/3/iobj wrote/0/root a/5/det letter/3/obj ") found = true;
  CHECK(found);
}

TEST_CASE("rotate with two blocks has exactly one candidate") {
  // one core dependent + root block
  auto s = testutil::make_sentence({2, 0}, {"nsubj", "root"}, {"she", "ran"});
  Rng rng(1);
  auto rots = rotate_sentence(s, always(), rng);
  REQUIRE(rots.size() == 1);
  CHECK(flat(rots[0]) == "ran/0/root she/2/nsubj ");
}

TEST_CASE("rotate preserves token and relation multisets") {
  Rng rng(78);
  MorphConfig cfg = always();
  for (int iter = 0; iter < 200; ++iter) {
    Sentence s = testutil::random_tree(rng, 2 + static_cast<int>(rng.below(9)),
                                       {"nsubj", "obj", "det", "obl", "amod"});
    std::multiset<std::string> src_tokens;
    std::multiset<std::string> src_rels;
    for (const Token& t : s.tokens) {
      src_tokens.insert(t.form);
      src_rels.insert((t.head == 0 ? "ROOT" : s.token(t.head).form) + ">" + t.form + ":" +
                      t.deprel);
    }
    Rng rrng(iter);
    for (const Sentence& r : rotate_sentence(s, cfg, rrng)) {
      REQUIRE(validate_tree(r, ValidateLevel::structure).ok);
      std::multiset<std::string> tokens;
      std::multiset<std::string> rels;
      for (const Token& t : r.tokens) {
        tokens.insert(t.form);
        rels.insert((t.head == 0 ? "ROOT" : r.token(t.head).form) + ">" + t.form + ":" + t.deprel);
      }
      CHECK(tokens == src_tokens);
      CHECK(rels == src_rels);
    }
  }
}

TEST_CASE("non-contiguous core subtrees are disqualified, not fatal") {
  // token 3's subtree is {1,3}: non-contiguous (token 2 intervenes)
  auto s = testutil::make_sentence({3, 0, 2, 2}, {"det", "root", "nsubj", "obj"});
  REQUIRE_FALSE(is_projective(s));
  Rng rng(1);
  auto rots = rotate_sentence(s, always(), rng);
  // blocks: obj [4] and root block [1,2,3] -> one non-identity permutation
  REQUIRE(rots.size() == 1);
  CHECK(flat(rots[0]) == "w4/3/obj w1/4/det w2/0/root w3/3/nsubj ");
  for (const auto& r : rots) CHECK(validate_tree(r, ValidateLevel::structure).ok);
}

TEST_CASE("morph_augment determinism and provenance") {
  Rng rng(5);
  Treebank tb;
  tb.language = "sme";
  for (int i = 0; i < 20; ++i)
    tb.sentences.push_back(
        testutil::random_tree(rng, 3 + static_cast<int>(rng.below(6)), {"nsubj", "obj", "obl"}));

  MorphConfig cfg;
  cfg.seed = 99;
  Treebank a = morph_augment(tb, cfg);
  Treebank b = morph_augment(tb, cfg);
  CHECK(serialize_conllu(a) == serialize_conllu(b));
  CHECK(a.size() >= tb.size());

  // originals come first, untouched
  for (std::size_t i = 0; i < tb.size(); ++i) CHECK(a.sentences[i] == tb.sentences[i]);
  for (std::size_t i = tb.size(); i < a.size(); ++i) {
    REQUIRE_FALSE(a.sentences[i].comments.empty());
    CHECK(a.sentences[i].comments[0].find("# augmented = morph:") == 0);
    CHECK(validate_tree(a.sentences[i], ValidateLevel::structure).ok);
  }

  // p = 0 -> identity
  MorphConfig off;
  off.p_crop = 0.0;
  off.p_rotate = 0.0;
  Treebank c = morph_augment(tb, off);
  CHECK(serialize_conllu(c) == serialize_conllu(tb));
}
