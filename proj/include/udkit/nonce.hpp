#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "udkit/conllu.hpp"
#include "udkit/rng.hpp"

namespace udkit {

// Nonce generation replaces content words with alternatives sharing the same
// universal POS, morphological features and dependency label, leaving the
// tree untouched.
struct NonceConfig {
  double p_replace = 0.5;
  int copies = 5;
  std::set<std::string> content_pos = {"NOUN", "VERB", "ADJ"};
  std::uint64_t seed = 0;
};

struct LexSignature {
  std::string upos;
  std::string feats;  // canonical serialization
  std::string deprel_universal;

  auto operator<=>(const LexSignature&) const = default;
};

inline LexSignature signature_of(const Token& t) {
  return {t.upos, feats_to_string(t.feats), std::string(universal_deprel(t.deprel))};
}

// Distinct (form, lemma) types per signature; insertion order is preserved so
// sampling is deterministic.
class LexiconIndex {
 public:
  void add(const Token& t) {
    auto& entry = index_[signature_of(t)];
    std::pair<std::string, std::string> type{t.form, t.lemma};
    if (entry.seen.insert(type).second) entry.types.push_back(std::move(type));
  }

  const std::vector<std::pair<std::string, std::string>>* types(const LexSignature& sig) const {
    auto it = index_.find(sig);
    return it == index_.end() ? nullptr : &it->second.types;
  }

  std::size_t signature_count() const { return index_.size(); }

 private:
  struct Entry {
    std::vector<std::pair<std::string, std::string>> types;
    std::set<std::pair<std::string, std::string>> seen;
  };
  std::map<LexSignature, Entry> index_;
};

inline LexiconIndex build_lexicon_index(const Treebank& tb, const NonceConfig& cfg) {
  LexiconIndex idx;
  for (const Sentence& s : tb.sentences)
    for (const Token& t : s.tokens)
      if (cfg.content_pos.count(t.upos)) idx.add(t);
  return idx;
}

// One nonce variant: per content token, with probability p_replace, swap in a
// uniformly sampled type with the same signature but a different form. All
// other columns are byte-identical to the input.
inline Sentence nonce_sentence(const Sentence& s, const LexiconIndex& idx, const NonceConfig& cfg,
                               Rng& rng) {
  Sentence out = s;
  for (Token& t : out.tokens) {
    if (!cfg.content_pos.count(t.upos)) continue;
    if (!rng.bernoulli(cfg.p_replace)) continue;
    const auto* types = idx.types(signature_of(t));
    if (!types) continue;
    std::vector<const std::pair<std::string, std::string>*> alternatives;
    for (const auto& ty : *types)
      if (ty.first != t.form) alternatives.push_back(&ty);
    if (alternatives.empty()) continue;  // no alternative under this signature
    const auto* pick = alternatives[rng.below(alternatives.size())];
    t.form = pick->first;
    t.lemma = pick->second;
  }
  return out;
}

// Originals first, then `copies` nonce variants per original (variants may
// coincide textually; all are emitted).
inline Treebank nonce_augment(const Treebank& tb, const LexiconIndex& idx,
                              const NonceConfig& cfg) {
  Treebank out;
  out.language = tb.language;
  out.sentences = tb.sentences;
  for (std::size_t i = 0; i < tb.sentences.size(); ++i) {
    const Sentence& src = tb.sentences[i];
    std::string src_id = src.sent_id();
    if (src_id.empty()) src_id = std::to_string(i + 1);
    Rng rng = Rng::substream(cfg.seed, "nonce", i);
    for (int c = 0; c < cfg.copies; ++c) {
      Sentence v = nonce_sentence(src, idx, cfg, rng);
      v.comments.clear();
      v.passthrough.clear();
      v.comments.push_back("# augmented = nonce source = " + src_id);
      out.sentences.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace udkit
