#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "udkit/conllu.hpp"
#include "udkit/utf8.hpp"

namespace udkit {

// Ordered grapheme-cluster rewrite rules mapping text into a pivot alphabet.
// Rules are applied longest-source-first at each position.
struct TranslitTable {
  struct Rule {
    std::string source;       // grapheme cluster (one or more codepoints)
    std::string replacement;  // may be empty (deletion)
  };
  std::vector<Rule> rules;
  std::string name;

  bool empty() const { return rules.empty(); }
};

namespace detail {

inline void sort_rules(std::vector<TranslitTable::Rule>& rules) {
  std::sort(rules.begin(), rules.end(), [](const auto& a, const auto& b) {
    if (a.source.size() != b.source.size()) return a.source.size() > b.source.size();
    return a.source < b.source;
  });
}

}  // namespace detail

inline TranslitTable make_table(std::string name,
                                std::vector<std::pair<std::string, std::string>> pairs) {
  TranslitTable t;
  t.name = std::move(name);
  std::unordered_set<std::string> seen;
  for (auto& [src, rep] : pairs) {
    if (src.empty()) throw std::invalid_argument("transliteration rule with empty source");
    if (!seen.insert(src).second)
      throw std::invalid_argument("duplicate transliteration source '" + src + "'");
    t.rules.push_back({std::move(src), std::move(rep)});
  }
  detail::sort_rules(t.rules);
  return t;
}

// TSV format: source<TAB>replacement, one rule per line, '#' comments allowed.
// A missing replacement column means deletion.
inline TranslitTable load_table(std::string_view text, std::string name = "custom") {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (!line.empty() && line.front() != '#') {
      std::size_t tab = line.find('\t');
      std::string src(tab == std::string_view::npos ? line : line.substr(0, tab));
      std::string rep(tab == std::string_view::npos ? std::string_view{} : line.substr(tab + 1));
      if (src.empty())
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": transliteration rule with empty source");
      pairs.emplace_back(std::move(src), std::move(rep));
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return make_table(std::move(name), std::move(pairs));
}

// Left-to-right scan applying the longest matching rule at each position.
// When only a lowercase rule exists, it also matches the case-folded text and
// the replacement's first character is uppercased.
inline std::string transliterate_text(std::string_view text, const TranslitTable& table) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const TranslitTable::Rule* hit = nullptr;
    bool first_was_upper = false;
    std::size_t advance = 0;

    for (const auto& rule : table.rules) {
      if (pos + rule.source.size() <= text.size() &&
          text.compare(pos, rule.source.size(), rule.source) == 0) {
        hit = &rule;
        advance = rule.source.size();
        break;
      }
    }
    if (!hit) {
      // retry against the case-folded prefix
      for (const auto& rule : table.rules) {
        auto rule_cps = utf8::decode_all(rule.source);
        std::size_t p = pos;
        bool match = true;
        bool upper = false;
        for (std::size_t k = 0; k < rule_cps.size(); ++k) {
          if (p >= text.size()) {
            match = false;
            break;
          }
          int len = utf8::seq_len(text, p);
          char32_t cp = utf8::decode(text, p, len);
          char32_t folded = utf8::fold_lower(cp);
          if (folded != rule_cps[k]) {
            match = false;
            break;
          }
          if (k == 0 && folded != cp) upper = true;
          p += static_cast<std::size_t>(len);
        }
        if (match) {
          hit = &rule;
          first_was_upper = upper;
          advance = p - pos;
          break;
        }
      }
    }

    if (hit) {
      if (first_was_upper && !hit->replacement.empty()) {
        auto cps = utf8::decode_all(hit->replacement);
        cps[0] = utf8::to_upper(cps[0]);
        for (char32_t c : cps) utf8::append(out, c);
      } else {
        out += hit->replacement;
      }
      pos += advance;
    } else {
      int len = utf8::seq_len(text, pos);
      out.append(text, pos, static_cast<std::size_t>(len));
      pos += static_cast<std::size_t>(len);
    }
  }
  return out;
}

struct TranslitFields {
  bool form = true;
  bool lemma = true;
};

// Rewrites the selected token fields; everything else (including structure,
// comments and passthrough lines) is untouched.
inline Treebank transliterate_treebank(const Treebank& tb, const TranslitTable& table,
                                       TranslitFields fields = {}) {
  Treebank out = tb;
  for (auto& s : out.sentences)
    for (auto& t : s.tokens) {
      if (fields.form) t.form = transliterate_text(t.form, table);
      if (fields.lemma) t.lemma = transliterate_text(t.lemma, table);
    }
  return out;
}

// The six Turkish letters outside basic Latin, folded to their base letters.
inline TranslitTable turkish_fold_table() {
  return make_table("turkish_fold", {
                                        {"ç", "c"},
                                        {"ğ", "g"},
                                        {"ı", "i"},
                                        {"ö", "o"},
                                        {"ş", "s"},
                                        {"ü", "u"},
                                        {"Ç", "C"},
                                        {"Ğ", "G"},
                                        {"İ", "I"},
                                        {"Ö", "O"},
                                        {"Ş", "S"},
                                        {"Ü", "U"},
                                    });
}

// Kazakh Cyrillic to basic Latin. A common romanization; the table is also
// shipped as an editable TSV (data/tables/kazakh_cyr_lat.tsv) for users who
// prefer a different convention.
inline TranslitTable kazakh_cyr_lat_table() {
  return make_table(
      "kazakh_cyr_lat",
      {
          {"а", "a"},    {"ә", "a"},  {"б", "b"},  {"в", "v"},  {"г", "g"},  {"ғ", "g"},
          {"д", "d"},    {"е", "e"},  {"ё", "yo"}, {"ж", "zh"}, {"з", "z"},  {"и", "i"},
          {"й", "y"},    {"к", "k"},  {"қ", "q"},  {"л", "l"},  {"м", "m"},  {"н", "n"},
          {"ң", "n"},    {"о", "o"},  {"ө", "o"},  {"п", "p"},  {"р", "r"},  {"с", "s"},
          {"т", "t"},    {"у", "u"},  {"ұ", "u"},  {"ү", "u"},  {"ф", "f"},  {"х", "kh"},
          {"һ", "h"},    {"ц", "ts"}, {"ч", "ch"}, {"ш", "sh"}, {"щ", "shch"}, {"ъ", ""},
          {"ы", "y"},    {"і", "i"},  {"ь", ""},   {"э", "e"},  {"ю", "yu"}, {"я", "ya"},
          {"А", "A"},    {"Ә", "A"},  {"Б", "B"},  {"В", "V"},  {"Г", "G"},  {"Ғ", "G"},
          {"Д", "D"},    {"Е", "E"},  {"Ё", "Yo"}, {"Ж", "Zh"}, {"З", "Z"},  {"И", "I"},
          {"Й", "Y"},    {"К", "K"},  {"Қ", "Q"},  {"Л", "L"},  {"М", "M"},  {"Н", "N"},
          {"Ң", "N"},    {"О", "O"},  {"Ө", "O"},  {"П", "P"},  {"Р", "R"},  {"С", "S"},
          {"Т", "T"},    {"У", "U"},  {"Ұ", "U"},  {"Ү", "U"},  {"Ф", "F"},  {"Х", "Kh"},
          {"Һ", "H"},    {"Ц", "Ts"}, {"Ч", "Ch"}, {"Ш", "Sh"}, {"Щ", "Shch"}, {"Ъ", ""},
          {"Ы", "Y"},    {"І", "I"},  {"Ь", ""},   {"Э", "E"},  {"Ю", "Yu"}, {"Я", "Ya"},
      });
}

// Built-in tables by name; empty optional-like behavior via exception.
inline TranslitTable builtin_table(std::string_view name) {
  if (name == "turkish_fold") return turkish_fold_table();
  if (name == "kazakh_cyr_lat") return kazakh_cyr_lat_table();
  throw std::invalid_argument("unknown built-in transliteration table '" + std::string(name) +
                              "' (have: turkish_fold, kazakh_cyr_lat)");
}

}  // namespace udkit
