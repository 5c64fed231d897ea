#include "polstance/refres.hpp"

#include <fstream>
#include <set>
#include <tuple>
#include <unordered_set>

#include "json.hpp"
#include "polstance/error.hpp"

namespace polstance {

using json = nlohmann::json;

std::string_view to_string(DescriptorKind k) {
  return k == DescriptorKind::Verb ? "verb" : "adjective";
}

DescriptorKind parse_descriptor_kind(std::string_view s) {
  const auto lower = to_lower(s);
  if (lower == "verb" || lower == "v") return DescriptorKind::Verb;
  if (lower == "adjective" || lower == "adj" || lower == "a") return DescriptorKind::Adjective;
  throw Error(ErrorKind::parse, "unknown relation kind '" + std::string(s) + "'");
}

namespace {

[[noreturn]] void malformed(const DepSentence& s, const std::string& what) {
  throw Error(ErrorKind::malformed_tree,
              "sentence '" + s.id + "': " + what);
}

/// Depth of every token; validates the head links along the way.
std::vector<std::size_t> token_depths(const DepSentence& s) {
  const std::size_t n = s.size();
  constexpr std::size_t kUnknown = static_cast<std::size_t>(-1);
  std::vector<std::size_t> depth(n, kUnknown);
  std::vector<std::size_t> on_path(n, kUnknown);  // stamp = walk origin

  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& tok = s.tokens[i];
    if (tok.index != i) malformed(s, "token indices must be 0..n-1 in order");
    if (!tok.head) {
      ++roots;
    } else if (*tok.head >= n) {
      malformed(s, "head of token " + std::to_string(i) + " out of range");
    } else if (*tok.head == i) {
      malformed(s, "token " + std::to_string(i) + " is its own head");
    }
  }
  if (roots != 1) malformed(s, "expected exactly one root, found " + std::to_string(roots));

  std::vector<std::size_t> path;
  for (std::size_t i = 0; i < n; ++i) {
    path.clear();
    std::size_t v = i;
    while (depth[v] == kUnknown) {
      if (on_path[v] == i) malformed(s, "cycle through token " + std::to_string(v));
      on_path[v] = i;
      path.push_back(v);
      if (!s.tokens[v].head) {
        depth[v] = 0;
        path.pop_back();
        break;
      }
      v = *s.tokens[v].head;
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      depth[*it] = depth[*s.tokens[*it].head] + 1;
    }
  }
  return depth;
}

bool closer(int dist, std::size_t noun, const MemoEntry& than) {
  return than.distance < 0 || dist < than.distance ||
         (dist == than.distance && noun < *than.noun);
}

}  // namespace

std::vector<MemoEntry> build_memo(const DepSentence& sentence, OpCounter* ops) {
  const std::size_t n = sentence.size();
  std::vector<MemoEntry> memo(n);
  if (n == 0) return memo;

  const auto depth = token_depths(sentence);
  std::size_t max_depth = 0;
  for (auto d : depth) max_depth = std::max(max_depth, d);
  std::vector<std::vector<std::size_t>> by_depth(max_depth + 1);
  for (std::size_t i = 0; i < n; ++i) {
    by_depth[depth[i]].push_back(i);
    if (is_nominal(sentence.tokens[i].upos)) memo[i] = {0, i};
  }

  // Deepest level first, so a node is final before it is pushed to its parent.
  for (std::size_t d = max_depth; d > 0; --d) {
    for (std::size_t v : by_depth[d]) {
      if (ops) ++ops->steps;
      if (memo[v].distance < 0) continue;
      auto& parent = memo[*sentence.tokens[v].head];
      const int cand = memo[v].distance + 1;
      if (closer(cand, *memo[v].noun, parent)) parent = {cand, memo[v].noun};
    }
  }
  return memo;
}

std::vector<RefAssignment> resolve(const DepSentence& sentence, std::span<const MemoEntry> memo,
                                   OpCounter* ops) {
  if (memo.size() != sentence.size()) {
    throw Error(ErrorKind::invariant, "resolve: memo does not match sentence '" + sentence.id + "'");
  }
  std::vector<RefAssignment> out;
  for (const auto& tok : sentence.tokens) {
    if (!is_descriptor(tok.upos)) continue;

    MemoEntry best = memo[tok.index];
    std::optional<std::size_t> up = tok.head;
    for (int k = 1; up && (best.distance < 0 || k <= best.distance); ++k) {
      if (ops) ++ops->steps;
      const auto& entry = memo[*up];
      if (entry.distance >= 0 && closer(k + entry.distance, *entry.noun, best)) {
        best = {k + entry.distance, entry.noun};
      }
      up = sentence.tokens[*up].head;
    }
    if (best.distance < 0) continue;
    out.push_back({tok.index, *best.noun, best.distance,
                   tok.upos == Upos::VERB ? DescriptorKind::Verb : DescriptorKind::Adjective});
  }
  return out;
}

std::vector<RefAssignment> resolve(const DepSentence& sentence) {
  return resolve(sentence, build_memo(sentence));
}

DescriptorMap resolve_article(const Article& article) {
  DescriptorMap out;
  for (std::size_t si = 0; si < article.sentences.size(); ++si) {
    const auto& sentence = article.sentences[si];
    std::vector<RefAssignment> links;
    try {
      links = resolve(sentence);
    } catch (const Error& e) {
      throw Error(e.kind(), "article '" + article.id + "' sentence " + std::to_string(si) +
                                ": " + e.what());
    }
    for (const auto& link : links) {
      out[to_lower(sentence.tokens[link.noun_index].lemma)].push_back(
          {to_lower(sentence.tokens[link.source_index].lemma), link.kind});
    }
  }
  return out;
}

std::vector<GoldRelation> parse_gold(std::istream& in) {
  std::vector<GoldRelation> out;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto obj = json::parse(line);
      out.push_back({obj.at("sentence_id").get<std::string>(),
                     obj.at("source_index").get<std::size_t>(),
                     obj.at("noun_index").get<std::size_t>(),
                     parse_descriptor_kind(obj.at("kind").get<std::string>())});
    } catch (const json::exception& e) {
      throw Error(ErrorKind::parse, "gold line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<GoldRelation> load_gold(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::missing_input, "cannot open gold file " + path.string());
  return parse_gold(in);
}

Prf prf_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  Prf r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  if (tp + fp > 0) r.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) r.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (r.precision + r.recall > 0) {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  }
  return r;
}

RefresScores eval_refres(std::span<const SentencePrediction> predicted,
                         std::span<const GoldRelation> gold) {
  using Key = std::tuple<std::string, std::size_t, std::size_t, DescriptorKind>;
  std::unordered_set<std::string> sentence_ids;
  std::set<Key> predicted_keys;
  for (const auto& sp : predicted) {
    sentence_ids.insert(sp.sentence_id);
    for (const auto& a : sp.assignments) {
      predicted_keys.emplace(sp.sentence_id, a.source_index, a.noun_index, a.kind);
    }
  }
  std::set<Key> gold_keys;
  for (const auto& g : gold) {
    if (!sentence_ids.count(g.sentence_id)) {
      throw Error(ErrorKind::invariant,
                  "gold relation names unknown sentence '" + g.sentence_id + "'");
    }
    gold_keys.emplace(g.sentence_id, g.source_index, g.noun_index, g.kind);
  }

  std::size_t tp[2] = {0, 0}, fp[2] = {0, 0}, fn[2] = {0, 0};
  for (const auto& key : predicted_keys) {
    const auto k = static_cast<std::size_t>(std::get<3>(key));
    (gold_keys.count(key) ? tp : fp)[k]++;
  }
  for (const auto& key : gold_keys) {
    if (!predicted_keys.count(key)) fn[static_cast<std::size_t>(std::get<3>(key))]++;
  }
  return {prf_from_counts(tp[0], fp[0], fn[0]), prf_from_counts(tp[1], fp[1], fn[1])};
}

std::vector<SentencePrediction> predict_relations(std::span<const DepSentence> sentences) {
  std::vector<SentencePrediction> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back({s.id, resolve(s)});
  return out;
}

}  // namespace polstance
