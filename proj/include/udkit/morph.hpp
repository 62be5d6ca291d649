#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "udkit/conllu.hpp"
#include "udkit/rng.hpp"

namespace udkit {

// Dependency-tree morphing: cropping removes subtrees of core arguments of
// the root predicate, rotation permutes them around it. Both keep every
// retained dependency relation intact.
struct MorphConfig {
  std::set<std::string> core_labels = {"nsubj", "obj", "iobj", "obl"};
  double p_crop = 0.3;
  double p_rotate = 0.3;
  int max_crops_per_sentence = 3;
  int max_rotations_per_sentence = 3;
  std::uint64_t seed = 0;
};

namespace detail {

inline int root_token(const Sentence& s) {
  for (const Token& t : s.tokens)
    if (t.head == 0) return t.id;
  return 0;
}

// Root dependents whose universal deprel is a core label, in surface order.
inline std::vector<int> core_dependents(const Sentence& s, const MorphConfig& cfg, int root) {
  std::vector<int> out;
  for (const Token& t : s.tokens)
    if (t.head == root && cfg.core_labels.count(std::string(universal_deprel(t.deprel))))
      out.push_back(t.id);
  return out;
}

// Rebuilds a sentence from a subset of token ids (surface order preserved),
// remapping ids and heads. Every kept token's head must be kept (or root).
inline Sentence rebuild(const Sentence& s, const std::vector<int>& kept) {
  std::vector<int> new_id(s.tokens.size() + 1, 0);
  for (std::size_t i = 0; i < kept.size(); ++i)
    new_id[static_cast<std::size_t>(kept[i])] = static_cast<int>(i + 1);
  Sentence out;
  out.tokens.reserve(kept.size());
  for (int id : kept) {
    Token t = s.token(id);
    t.id = new_id[static_cast<std::size_t>(id)];
    t.head = t.head == 0 ? 0 : new_id[static_cast<std::size_t>(t.head)];
    out.tokens.push_back(std::move(t));
  }
  return out;
}

}  // namespace detail

// Crop candidates: remove each non-empty proper subset of the core-argument
// subtrees. Deterministic candidate order (subset bitmask, ascending), each
// kept with probability p_crop up to the per-sentence cap.
inline std::vector<Sentence> crop_sentence(const Sentence& s, const MorphConfig& cfg, Rng& rng) {
  std::vector<Sentence> out;
  if (cfg.max_crops_per_sentence <= 0 || cfg.p_crop <= 0.0) return out;
  int root = detail::root_token(s);
  if (root == 0) return out;
  std::vector<int> core = detail::core_dependents(s, cfg, root);
  if (core.size() < 2) return out;  // must retain at least one core argument

  std::vector<std::vector<int>> subtrees;
  subtrees.reserve(core.size());
  for (int d : core) subtrees.push_back(subtree_of(s, d));

  // candidate scans are bounded so degenerate trees cannot stall augmentation
  std::uint64_t n_masks = core.size() < 20 ? (1ull << core.size()) : (1ull << 20);
  for (std::uint64_t mask = 1; mask + 1 < n_masks; ++mask) {
    if (!rng.bernoulli(cfg.p_crop)) continue;
    std::vector<char> removed(s.tokens.size() + 1, 0);
    for (std::size_t i = 0; i < core.size(); ++i)
      if (mask & (1ull << i))
        for (int id : subtrees[i]) removed[static_cast<std::size_t>(id)] = 1;
    std::vector<int> kept;
    for (const Token& t : s.tokens)
      if (!removed[static_cast<std::size_t>(t.id)]) kept.push_back(t.id);
    out.push_back(detail::rebuild(s, kept));
    if (static_cast<int>(out.size()) >= cfg.max_crops_per_sentence) break;
  }
  return out;
}

// Rotation blocks: each core dependent whose subtree is a contiguous span,
// plus one block holding the root and all remaining material in original
// order. Candidates are the non-identity permutations of the block sequence
// in lexicographic order.
inline std::vector<Sentence> rotate_sentence(const Sentence& s, const MorphConfig& cfg, Rng& rng) {
  std::vector<Sentence> out;
  if (cfg.max_rotations_per_sentence <= 0 || cfg.p_rotate <= 0.0) return out;
  int root = detail::root_token(s);
  if (root == 0) return out;
  std::vector<int> core = detail::core_dependents(s, cfg, root);

  std::vector<std::vector<int>> blocks;  // token ids per block, surface order inside
  std::vector<char> in_core_block(s.tokens.size() + 1, 0);
  for (int d : core) {
    std::vector<int> span = subtree_of(s, d);
    bool contiguous = span.back() - span.front() + 1 == static_cast<int>(span.size());
    if (!contiguous) continue;  // stays with the root block
    blocks.push_back(span);
    for (int id : span) in_core_block[static_cast<std::size_t>(id)] = 1;
  }
  std::vector<int> root_block;
  for (const Token& t : s.tokens)
    if (!in_core_block[static_cast<std::size_t>(t.id)]) root_block.push_back(t.id);
  blocks.push_back(std::move(root_block));
  if (blocks.size() < 2) return out;

  // order blocks by surface position to get the original block sequence
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  std::vector<std::size_t> perm(blocks.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::uint64_t scans = 0;
  while (std::next_permutation(perm.begin(), perm.end()) && scans++ < (1ull << 20)) {
    if (!rng.bernoulli(cfg.p_rotate)) continue;
    std::vector<int> kept;
    kept.reserve(s.tokens.size());
    for (std::size_t b : perm)
      for (int id : blocks[b]) kept.push_back(id);
    out.push_back(detail::rebuild(s, kept));
    if (static_cast<int>(out.size()) >= cfg.max_rotations_per_sentence) break;
  }
  return out;
}

// Originals first, then all crops and rotations in source order. Added
// sentences carry a provenance comment and drop source comments/passthrough.
inline Treebank morph_augment(const Treebank& tb, const MorphConfig& cfg) {
  Treebank out;
  out.language = tb.language;
  out.sentences = tb.sentences;
  for (std::size_t i = 0; i < tb.sentences.size(); ++i) {
    const Sentence& src = tb.sentences[i];
    std::string src_id = src.sent_id();
    if (src_id.empty()) src_id = std::to_string(i + 1);

    Rng crop_rng = Rng::substream(cfg.seed, "morph-crop", i);
    for (Sentence& c : crop_sentence(src, cfg, crop_rng)) {
      c.comments.insert(c.comments.begin(), "# augmented = morph:crop source = " + src_id);
      out.sentences.push_back(std::move(c));
    }
    Rng rot_rng = Rng::substream(cfg.seed, "morph-rotate", i);
    for (Sentence& r : rotate_sentence(src, cfg, rot_rng)) {
      r.comments.insert(r.comments.begin(), "# augmented = morph:rotate source = " + src_id);
      out.sentences.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace udkit
