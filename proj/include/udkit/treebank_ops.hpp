#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "udkit/conllu.hpp"
#include "udkit/rng.hpp"
#include "udkit/utf8.hpp"

namespace udkit {

struct SplitSpec {
  double ratio = 0.5;  // fraction of sentences going to the train side
  std::uint64_t seed = 0;
};

// Deterministic shuffle, then the first ceil(ratio*n) sentences become train.
inline std::pair<Treebank, Treebank> split_treebank(const Treebank& tb, const SplitSpec& spec) {
  if (tb.size() < 2) throw std::invalid_argument("split requires at least 2 sentences");
  if (!(spec.ratio > 0.0 && spec.ratio < 1.0))
    throw std::invalid_argument("split ratio must be strictly between 0 and 1");
  std::vector<std::size_t> idx(tb.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rng rng = Rng::substream(spec.seed, "split");
  rng.shuffle(idx);
  auto n_train = static_cast<std::size_t>(std::ceil(spec.ratio * static_cast<double>(tb.size())));
  Treebank train, dev;
  train.language = dev.language = tb.language;
  for (std::size_t i = 0; i < idx.size(); ++i)
    (i < n_train ? train : dev).sentences.push_back(tb.sentences[idx[i]]);
  return {std::move(train), std::move(dev)};
}

// Sample without replacement; kept sentences stay in original order.
inline Treebank subsample(const Treebank& tb, std::size_t count, std::uint64_t seed) {
  if (count > tb.size())
    throw std::invalid_argument("subsample count " + std::to_string(count) +
                                " exceeds treebank size " + std::to_string(tb.size()));
  Rng rng = Rng::substream(seed, "subsample");
  auto keep = rng.sample_indices(tb.size(), count);
  Treebank out;
  out.language = tb.language;
  out.sentences.reserve(count);
  for (std::size_t i : keep) out.sentences.push_back(tb.sentences[i]);
  return out;
}

// Fraction of target running tokens whose form occurs anywhere in the source
// (exact match, case-sensitive).
inline double vocab_overlap(const Treebank& target, const Treebank& source) {
  std::unordered_set<std::string> source_forms;
  for (const auto& s : source.sentences)
    for (const auto& t : s.tokens) source_forms.insert(t.form);
  std::size_t total = 0, shared = 0;
  for (const auto& s : target.sentences)
    for (const auto& t : s.tokens) {
      ++total;
      if (source_forms.count(t.form)) ++shared;
    }
  return total == 0 ? 0.0 : static_cast<double>(shared) / static_cast<double>(total);
}

namespace detail {

// Character n-grams of one token form, over codepoints, unpadded.
inline std::vector<std::string> token_ngrams(const std::string& form, int n) {
  auto cps = utf8::codepoints(form);
  std::vector<std::string> out;
  if (static_cast<int>(cps.size()) < n) return out;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= cps.size(); ++i) {
    std::string g;
    for (int j = 0; j < n; ++j) g += cps[i + static_cast<std::size_t>(j)];
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace detail

// Token-level character n-gram overlap: fraction of target n-gram occurrences
// (per token form, no cross-token n-grams) that appear in the source n-gram set.
inline double char_ngram_overlap(const Treebank& target, const Treebank& source, int n = 3) {
  if (n < 1) throw std::invalid_argument("n-gram order must be >= 1");
  std::unordered_set<std::string> source_grams;
  for (const auto& s : source.sentences)
    for (const auto& t : s.tokens)
      for (auto& g : detail::token_ngrams(t.form, n)) source_grams.insert(std::move(g));
  std::size_t total = 0, shared = 0;
  for (const auto& s : target.sentences)
    for (const auto& t : s.tokens)
      for (const auto& g : detail::token_ngrams(t.form, n)) {
        ++total;
        if (source_grams.count(g)) ++shared;
      }
  return total == 0 ? 0.0 : static_cast<double>(shared) / static_cast<double>(total);
}

}  // namespace udkit
