#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace udkit {

// One CoNLL-U syntactic word. Optional columns ('_') are stored as the empty
// string. Feats are kept in canonical order: sorted by key, then value.
struct Token {
  int id = 0;  // 1-based position
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;
  std::vector<std::pair<std::string, std::string>> feats;
  int head = -1;  // 0 = artificial root
  std::string deprel;
  std::string deps;
  std::string misc;

  bool operator==(const Token&) const = default;
};

// Multiword-token range lines ("1-2\t...") and empty-node lines ("5.1\t...")
// are preserved verbatim so files round-trip; they are not part of the tree.
struct Passthrough {
  int anchor = 0;       // token id the line attaches to
  bool before = false;  // true: emitted before token `anchor` (range lines);
                        // false: emitted after it (empty nodes; 0 = sentence start)
  std::string raw;

  bool operator==(const Passthrough&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::vector<std::string> comments;  // verbatim '#' lines
  std::vector<Passthrough> passthrough;

  bool operator==(const Sentence&) const = default;

  int size() const { return static_cast<int>(tokens.size()); }
  const Token& token(int id) const { return tokens[static_cast<std::size_t>(id - 1)]; }
  Token& token(int id) { return tokens[static_cast<std::size_t>(id - 1)]; }

  std::string sent_id() const {
    for (const auto& c : comments) {
      std::string_view v = c;
      if (v.substr(0, 1) == "#") v.remove_prefix(1);
      while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
      if (v.substr(0, 7) == "sent_id") {
        v.remove_prefix(7);
        while (!v.empty() && (v.front() == ' ' || v.front() == '=')) v.remove_prefix(1);
        return std::string(v);
      }
    }
    return {};
  }
};

struct Treebank {
  std::vector<Sentence> sentences;
  std::string language = "und";

  std::size_t size() const { return sentences.size(); }
  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.tokens.size();
    return n;
  }
};

struct ConlluError : std::runtime_error {
  int line;
  ConlluError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Universal part of a dependency relation: text before the first ':'.
inline std::string_view universal_deprel(std::string_view deprel) {
  auto pos = deprel.find(':');
  return pos == std::string_view::npos ? deprel : deprel.substr(0, pos);
}

inline std::vector<std::pair<std::string, std::string>> parse_feats(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> feats;
  if (text.empty() || text == "_") return feats;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t bar = text.find('|', pos);
    std::string_view item = text.substr(pos, bar == std::string_view::npos ? bar : bar - pos);
    if (!item.empty()) {
      std::size_t eq = item.find('=');
      if (eq == std::string_view::npos)
        feats.emplace_back(std::string(item), std::string());
      else
        feats.emplace_back(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    }
    if (bar == std::string_view::npos) break;
    pos = bar + 1;
  }
  std::sort(feats.begin(), feats.end());
  feats.erase(std::unique(feats.begin(), feats.end()), feats.end());
  return feats;
}

inline std::string feats_to_string(const std::vector<std::pair<std::string, std::string>>& feats) {
  if (feats.empty()) return "_";
  std::string out;
  for (std::size_t i = 0; i < feats.size(); ++i) {
    if (i) out += '|';
    out += feats[i].first;
    if (!feats[i].second.empty()) {
      out += '=';
      out += feats[i].second;
    }
  }
  return out;
}

enum class ErrorPolicy { fail_fast, skip_sentence };

struct ParseIssue {
  int line;
  std::string message;
};

namespace detail {

inline std::optional<long> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  long v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
    if (v > 1'000'000'000L) return std::nullopt;
  }
  return v;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(pos));
      break;
    }
    cols.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return cols;
}

inline std::string opt_col(std::string_view v) { return v == "_" ? std::string() : std::string(v); }

// Detects a cycle in the head relation; returns the id of a token on a cycle,
// or 0 if the sentence is acyclic.
inline int find_cycle(const Sentence& s) {
  int n = s.size();
  std::vector<int> state(static_cast<std::size_t>(n) + 1, 0);  // 0 new, 1 visiting, 2 done
  for (int i = 1; i <= n; ++i) {
    if (state[static_cast<std::size_t>(i)] != 0) continue;
    int j = i;
    std::vector<int> path;
    while (j != 0 && state[static_cast<std::size_t>(j)] == 0) {
      state[static_cast<std::size_t>(j)] = 1;
      path.push_back(j);
      j = s.token(j).head;
      if (j < 0 || j > n) break;  // out-of-range head: handled elsewhere
    }
    if (j > 0 && state[static_cast<std::size_t>(j)] == 1) return j;
    for (int k : path) state[static_cast<std::size_t>(k)] = 2;
  }
  return 0;
}

}  // namespace detail

// Parses a whole CoNLL-U file. Sentences are separated by blank lines; token
// lines have 10 tab-separated columns. With ErrorPolicy::skip_sentence,
// offending sentences are dropped and reported through `issues`.
inline Treebank parse_conllu(std::string_view text, std::string language = "und",
                             ErrorPolicy policy = ErrorPolicy::fail_fast,
                             std::vector<ParseIssue>* issues = nullptr) {
  Treebank tb;
  tb.language = std::move(language);

  Sentence cur;
  int cur_first_line = 0;
  bool cur_bad = false;

  auto report = [&](int line, const std::string& msg) {
    if (policy == ErrorPolicy::fail_fast) throw ConlluError(line, msg);
    if (issues) issues->push_back({line, msg});
    cur_bad = true;
  };

  auto flush = [&](int line_no) {
    if (cur.tokens.empty() && cur.comments.empty() && cur.passthrough.empty() && !cur_bad) return;
    if (!cur_bad && cur.tokens.empty()) {
      report(cur_first_line ? cur_first_line : line_no, "sentence has no token lines");
    }
    if (!cur_bad) {
      int n = cur.size();
      for (const Token& t : cur.tokens) {
        if (t.head > n) {
          report(line_no, "head " + std::to_string(t.head) + " out of range for token " +
                              std::to_string(t.id));
          break;
        }
      }
    }
    if (!cur_bad) {
      if (int c = detail::find_cycle(cur); c != 0)
        report(line_no, "cycle in head relation through token " + std::to_string(c));
    }
    if (!cur_bad) tb.sentences.push_back(std::move(cur));
    cur = Sentence{};
    cur_first_line = 0;
    cur_bad = false;
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;

    if (line.empty()) {
      flush(line_no);
    } else if (line.front() == '#') {
      if (cur_first_line == 0) cur_first_line = line_no;
      cur.comments.emplace_back(line);
    } else {
      if (cur_first_line == 0) cur_first_line = line_no;
      auto cols = detail::split_tabs(line);
      if (!cur_bad && cols.size() != 10) {
        report(line_no, "expected 10 columns, got " + std::to_string(cols.size()));
      } else if (!cur_bad) {
        std::string_view idcol = cols[0];
        if (idcol.find('-') != std::string_view::npos) {
          auto a = detail::parse_int(idcol.substr(0, idcol.find('-')));
          if (!a || *a < 1)
            report(line_no, "bad multiword range id '" + std::string(idcol) + "'");
          else
            cur.passthrough.push_back({static_cast<int>(*a), true, std::string(line)});
        } else if (idcol.find('.') != std::string_view::npos) {
          auto a = detail::parse_int(idcol.substr(0, idcol.find('.')));
          if (!a || *a < 0)
            report(line_no, "bad empty-node id '" + std::string(idcol) + "'");
          else
            cur.passthrough.push_back({static_cast<int>(*a), false, std::string(line)});
        } else {
          auto id = detail::parse_int(idcol);
          auto head = detail::parse_int(cols[6]);
          if (!id || *id < 1) {
            report(line_no, "non-integer or non-positive id '" + std::string(idcol) + "'");
          } else if (!head) {
            report(line_no, "non-integer head '" + std::string(cols[6]) + "'");
          } else if (*head == *id) {
            report(line_no, "self-loop at line " + std::to_string(line_no));
          } else if (*id != cur.size() + 1) {
            report(line_no, "token id " + std::to_string(*id) + " out of sequence (expected " +
                                std::to_string(cur.size() + 1) + ")");
          } else {
            Token t;
            t.id = static_cast<int>(*id);
            t.form = std::string(cols[1]);
            t.lemma = detail::opt_col(cols[2]);
            t.upos = detail::opt_col(cols[3]);
            t.xpos = detail::opt_col(cols[4]);
            t.feats = parse_feats(cols[5]);
            t.head = static_cast<int>(*head);
            t.deprel = detail::opt_col(cols[7]);
            t.deps = detail::opt_col(cols[8]);
            t.misc = detail::opt_col(cols[9]);
            cur.tokens.push_back(std::move(t));
          }
        }
      }
    }

    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  flush(line_no + 1);
  return tb;
}

inline void serialize_sentence(const Sentence& s, std::string& out) {
  auto emit_passthrough = [&](int anchor, bool before) {
    for (const auto& p : s.passthrough)
      if (p.anchor == anchor && p.before == before) {
        out += p.raw;
        out += '\n';
      }
  };
  for (const auto& c : s.comments) {
    out += c;
    out += '\n';
  }
  emit_passthrough(0, false);
  auto col = [](const std::string& v) -> const std::string& {
    static const std::string underscore = "_";
    return v.empty() ? underscore : v;
  };
  for (const Token& t : s.tokens) {
    emit_passthrough(t.id, true);
    out += std::to_string(t.id);
    out += '\t';
    out += t.form.empty() ? "_" : t.form;
    out += '\t';
    out += col(t.lemma);
    out += '\t';
    out += col(t.upos);
    out += '\t';
    out += col(t.xpos);
    out += '\t';
    out += feats_to_string(t.feats);
    out += '\t';
    out += std::to_string(t.head);
    out += '\t';
    out += col(t.deprel);
    out += '\t';
    out += col(t.deps);
    out += '\t';
    out += col(t.misc);
    out += '\n';
    emit_passthrough(t.id, false);
  }
  out += '\n';
}

inline std::string serialize_conllu(const Treebank& tb) {
  std::string out;
  for (const Sentence& s : tb.sentences) serialize_sentence(s, out);
  return out;
}

enum class ValidateLevel { structure, convention };

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> issues;

  void add(std::string msg) {
    ok = false;
    issues.push_back(std::move(msg));
  }
};

// Structure level: well-formed tree (id sequence, head range, acyclic, exactly
// one head-0 token). Convention level additionally requires the head-0 token
// to carry the "root" relation and nobody else to. Predicted trees may violate
// the convention ("rootless" output) while still being structurally sound.
inline ValidationReport validate_tree(const Sentence& s, ValidateLevel level) {
  ValidationReport rep;
  int n = s.size();
  for (int i = 0; i < n; ++i) {
    if (s.tokens[static_cast<std::size_t>(i)].id != i + 1)
      rep.add("token " + std::to_string(i + 1) + " has id " +
              std::to_string(s.tokens[static_cast<std::size_t>(i)].id) + ", ids must be 1.." +
              std::to_string(n));
  }
  if (!rep.ok) return rep;

  int root_count = 0;
  for (const Token& t : s.tokens) {
    if (t.head < 0 || t.head > n)
      rep.add("token " + std::to_string(t.id) + " head " + std::to_string(t.head) +
              " out of range");
    else if (t.head == t.id)
      rep.add("token " + std::to_string(t.id) + " is its own head");
    if (t.head == 0) ++root_count;
  }
  if (rep.ok) {
    if (int c = detail::find_cycle(s); c != 0)
      rep.add("cycle in head relation through token " + std::to_string(c));
  }
  if (root_count == 0)
    rep.add("no token has head 0");
  else if (root_count > 1)
    rep.add(std::to_string(root_count) + " tokens have head 0, expected exactly one");

  if (level == ValidateLevel::convention) {
    for (const Token& t : s.tokens) {
      bool is_root_label = universal_deprel(t.deprel) == "root";
      if (t.head == 0 && !is_root_label)
        rep.add("rootless: head-0 token " + std::to_string(t.id) + " labeled '" + t.deprel + "'");
      if (t.head != 0 && is_root_label)
        rep.add("token " + std::to_string(t.id) + " labeled 'root' but head is " +
                std::to_string(t.head));
    }
  }
  return rep;
}

// True iff no two arcs cross when drawn above the sentence; arcs from the
// artificial root participate.
inline bool is_projective(const Sentence& s) {
  struct Span {
    int lo, hi;
  };
  std::vector<Span> arcs;
  arcs.reserve(s.tokens.size());
  for (const Token& t : s.tokens)
    arcs.push_back({std::min(t.head, t.id), std::max(t.head, t.id)});
  for (std::size_t i = 0; i < arcs.size(); ++i)
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      const Span& a = arcs[i];
      const Span& b = arcs[j];
      if ((a.lo < b.lo && b.lo < a.hi && a.hi < b.hi) ||
          (b.lo < a.lo && a.lo < b.hi && b.hi < a.hi))
        return false;
    }
  return true;
}

// Dependents of `head` (0 = artificial root), in surface order.
inline std::vector<int> dependents_of(const Sentence& s, int head) {
  std::vector<int> out;
  for (const Token& t : s.tokens)
    if (t.head == head) out.push_back(t.id);
  return out;
}

// All tokens in the subtree rooted at `id` (inclusive), in surface order.
inline std::vector<int> subtree_of(const Sentence& s, int id) {
  int n = s.size();
  std::vector<char> in(static_cast<std::size_t>(n) + 1, 0);
  in[static_cast<std::size_t>(id)] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Token& t : s.tokens) {
      if (!in[static_cast<std::size_t>(t.id)] && t.head > 0 &&
          in[static_cast<std::size_t>(t.head)]) {
        in[static_cast<std::size_t>(t.id)] = 1;
        grew = true;
      }
    }
  }
  std::vector<int> out;
  for (int i = 1; i <= n; ++i)
    if (in[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

}  // namespace udkit
