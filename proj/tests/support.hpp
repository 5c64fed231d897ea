#pragma once

// Test-only fixtures and oracles. Nothing here calls into the resolver it
// is used to check.

#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "polstance/leaning_space.hpp"
#include "polstance/stance.hpp"
#include "polstance/types.hpp"

namespace polstance::testing {

struct Tok {
  std::string form;
  std::string lemma;
  Upos upos;
  std::size_t head;  // 1-based, 0 = root
  std::string deprel;
  std::string feats = "_";
};

inline DepSentence make_sentence(const std::vector<Tok>& toks, std::string id = "s") {
  DepSentence s;
  s.id = std::move(id);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    DepToken t;
    t.index = i;
    t.surface = toks[i].form;
    t.lemma = toks[i].lemma;
    t.upos = toks[i].upos;
    if (toks[i].head > 0) t.head = toks[i].head - 1;
    t.deprel = toks[i].deprel;
    t.feats = toks[i].feats;
    s.tokens.push_back(std::move(t));
  }
  return s;
}

/// "John is very healthy because John often jogs", rooted at "is".
inline DepSentence walkthrough_sentence() {
  return make_sentence({
      {"John", "John", Upos::PROPN, 2, "nsubj"},
      {"is", "be", Upos::AUX, 0, "ROOT"},
      {"very", "very", Upos::ADV, 4, "advmod"},
      {"healthy", "healthy", Upos::ADJ, 2, "acomp"},
      {"because", "because", Upos::SCONJ, 8, "mark"},
      {"John", "John", Upos::PROPN, 8, "nsubj"},
      {"often", "often", Upos::ADV, 8, "advmod"},
      {"jogs", "jog", Upos::VERB, 2, "advcl"},
  }, "walkthrough");
}

/// "John is gifted. He was always good at math."
inline Article gifted_article() {
  Article a;
  a.id = "gifted";
  a.sentences.push_back(make_sentence({
      {"John", "John", Upos::PROPN, 3, "nsubj", "Number=Sing"},
      {"is", "be", Upos::AUX, 3, "cop"},
      {"gifted", "gifted", Upos::ADJ, 0, "root"},
      {".", ".", Upos::PUNCT, 3, "punct"},
  }, "gifted:0"));
  a.sentences.push_back(make_sentence({
      {"He", "he", Upos::PRON, 4, "nsubj", "Case=Nom|Gender=Masc|Number=Sing|Person=3|PronType=Prs"},
      {"was", "be", Upos::AUX, 4, "cop"},
      {"always", "always", Upos::ADV, 4, "advmod"},
      {"good", "good", Upos::ADJ, 0, "root"},
      {"at", "at", Upos::ADP, 6, "case"},
      {"math", "math", Upos::NOUN, 4, "obl"},
      {".", ".", Upos::PUNCT, 4, "punct"},
  }, "gifted:1"));
  return a;
}

/// Nearest nominal token by plain BFS over the undirected tree; ties to the
/// smaller index. Every simple tree path climbs zero or more edges and then
/// descends, so this is the ascend-then-descend ground truth.
inline std::optional<std::pair<std::size_t, int>> brute_force_nearest(const DepSentence& s,
                                                                      std::size_t source) {
  const std::size_t n = s.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& t : s.tokens) {
    if (t.head) {
      adj[t.index].push_back(*t.head);
      adj[*t.head].push_back(t.index);
    }
  }
  std::vector<int> dist(n, -1);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto w : adj[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  std::optional<std::pair<std::size_t, int>> best;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_nominal(s.tokens[i].upos) || dist[i] < 0) continue;
    if (!best || dist[i] < best->second) best = {{i, dist[i]}};
  }
  return best;
}

/// Random tree of 1..max_tokens tokens with random POS tags.
inline DepSentence random_tree(std::mt19937_64& rng, std::size_t max_tokens = 12) {
  static const std::vector<Upos> tags = {Upos::NOUN, Upos::PROPN, Upos::VERB, Upos::ADJ,
                                         Upos::AUX,  Upos::ADV,   Upos::DET,  Upos::ADP};
  const std::size_t n = 1 + rng() % max_tokens;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);

  std::vector<Tok> toks(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto v = order[k];
    toks[v].form = toks[v].lemma = "w" + std::to_string(v);
    toks[v].upos = tags[rng() % tags.size()];
    toks[v].head = k == 0 ? 0 : order[rng() % k] + 1;
    toks[v].deprel = k == 0 ? "root" : "dep";
  }
  return make_sentence(toks, "random");
}

/// Chain of n tokens, each headed by its predecessor, noun at the root and
/// verbs everywhere else: every verb has to climb to the root.
inline DepSentence chain_sentence(std::size_t n) {
  std::vector<Tok> toks;
  for (std::size_t i = 0; i < n; ++i) {
    toks.push_back({"t", "t", i == 0 ? Upos::NOUN : Upos::VERB, i, i == 0 ? "root" : "dep"});
  }
  return make_sentence(toks, "chain");
}

// Worked vectorization example -------------------------------------------------

inline StanceMap stance_of(const std::vector<std::pair<std::string, double>>& entries) {
  StanceMap m;
  for (const auto& [noun, mean] : entries) m[noun] = {mean, 1};
  return m;
}

/// Per-class corpus stances toward six nouns.
inline ClassStances sample_class_stances() {
  return {
      {Leaning::Left, stance_of({{"trump", -0.7}, {"ira", 0.5}, {"israel", 0.1}, {"immigrant", 0.3}})},
      {Leaning::Right, stance_of({{"trump", 0.8}, {"ira", -0.1}, {"israel", 0.8}, {"vaccine", -0.5}})},
      {Leaning::Center, stance_of({{"trump", -0.2}, {"ira", 0.1}, {"israel", 0.3}, {"china", -0.1}})},
  };
}

inline StanceMap sample_article() {
  return stance_of({{"trump", -0.3}, {"immigrant", 0.10}, {"canada", 0.05}});
}

/// 1 - a.b/(|a||b|) with plain loops in long double; independent of Eigen.
inline double reference_cosine_distance(const std::vector<double>& a, const std::vector<double>& b) {
  long double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<long double>(a[i]) * b[i];
    na += static_cast<long double>(a[i]) * a[i];
    nb += static_cast<long double>(b[i]) * b[i];
  }
  return static_cast<double>(1.0L - dot / (std::sqrt(na) * std::sqrt(nb)));
}

// Planted-stance corpus -------------------------------------------------------

inline constexpr const char* kPlantedLexicon =
    "good\t0.7\ngreat\t0.8\nhonest\t0.6\nthrive\t0.5\n"
    "bad\t-0.7\ncorrupt\t-0.8\nfail\t-0.5\nweak\t-0.6\n";

struct PlantedGenerator {
  std::mt19937_64 rng;
  std::size_t counter = 0;

  explicit PlantedGenerator(std::uint64_t seed) : rng(seed) {}

  /// +1 / -1 attitude of `leaning` toward each planted noun.
  static int sign(Leaning l, const std::string& noun) {
    if (noun == "union") return l == Leaning::Left ? 1 : 0;
    if (noun == "militia") return l == Leaning::Right ? 1 : 0;
    if (noun == "committee") return l == Leaning::Center ? 1 : 0;
    if (noun == "senator") return l == Leaning::Left ? -1 : 1;
    if (noun == "economy") return l == Leaning::Right ? -1 : 1;
    if (noun == "border") return l == Leaning::Left ? -1 : 1;
    if (noun == "smith") return l == Leaning::Left ? -1 : 1;
    return 0;
  }

  static std::string marker(Leaning l) {
    return l == Leaning::Left ? "union" : l == Leaning::Right ? "militia" : "committee";
  }

  std::string pick(const std::vector<std::string>& words) { return words[rng() % words.size()]; }

  /// "<noun> is <adj> ." rooted at the adjective.
  DepSentence copula(const std::string& noun, Upos noun_pos, int s) {
    const std::string adj = s > 0 ? pick({"good", "great", "honest"}) : pick({"bad", "corrupt", "weak"});
    return make_sentence({{noun, noun, noun_pos, 3, "nsubj"},
                          {"is", "be", Upos::AUX, 3, "cop"},
                          {adj, adj, Upos::ADJ, 0, "root"},
                          {".", ".", Upos::PUNCT, 3, "punct"}});
  }

  /// "<subject> <verb>s ." rooted at the verb.
  DepSentence intransitive(const std::string& form, const std::string& lemma, Upos pos,
                           const std::string& feats, int s) {
    const std::string verb = s > 0 ? "thrive" : "fail";
    return make_sentence({{form, lemma, pos, 2, "nsubj", feats},
                          {verb + "s", verb, Upos::VERB, 0, "root"},
                          {".", ".", Upos::PUNCT, 2, "punct"}});
  }

  Article article(Leaning l) {
    Article a;
    a.id = std::string(to_string(l)) + "-" + std::to_string(counter++);
    a.leaning = l;
    a.outlet = std::string(to_string(l)) + "-outlet-" + std::to_string(rng() % 2);
    const int year = 2021 + static_cast<int>(rng() % 3);
    const unsigned month = 1 + static_cast<unsigned>(rng() % 12);
    a.published_at = Date{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{15}};
    a.title = "t";
    a.text = "synthetic";

    const auto m = marker(l);
    a.sentences.push_back(copula(m, Upos::NOUN, 1));
    a.sentences.push_back(intransitive(m, m, Upos::NOUN, "_", 1));
    const std::vector<std::string> shared = {"senator", "economy", "border"};
    const auto noun = pick(shared);
    a.sentences.push_back(copula(noun, Upos::NOUN, sign(l, noun)));
    if (rng() % 2) {
      // Proper noun followed by a pronoun the baseline coref must resolve.
      a.sentences.push_back(copula("Smith", Upos::PROPN, sign(l, "smith")));
      a.sentences.push_back(intransitive("He", "he", Upos::PRON, "Person=3|PronType=Prs",
                                         sign(l, "smith")));
    }
    for (std::size_t i = 0; i < a.sentences.size(); ++i) {
      a.sentences[i].id = a.id + ":" + std::to_string(i);
    }
    return a;
  }

  std::vector<Article> corpus(std::size_t per_class) {
    std::vector<Article> out;
    for (std::size_t i = 0; i < per_class; ++i) {
      for (Leaning l : kLeanings) out.push_back(article(l));
    }
    return out;
  }
};

}  // namespace polstance::testing
