#include "polstance/pipeline.hpp"

#include "polstance/io.hpp"
#include "polstance/refres.hpp"

namespace polstance {

std::string RunConfig::canonical() const {
  std::string out = command;
  for (const auto& [key, value] : values) out += ";" + key + "=" + value;
  return out;
}

std::string RunConfig::digest() const { return fnv1a_hex(canonical()); }

std::string_view to_string(CorefMode m) {
  return m == CorefMode::External ? "external" : "baseline";
}

std::vector<Article> resolve_coreferences(std::vector<Article> articles,
                                          const SubstitutionTable* table, std::size_t jobs) {
  parallel_for(articles.size(), jobs, [&](std::size_t i) {
    auto& a = articles[i];
    if (table) {
      auto it = table->find(a.id);
      if (it != table->end()) a = apply_substitutions(std::move(a), it->second);
    } else {
      const auto subs = heuristic_resolve(a);
      a = apply_substitutions(std::move(a), subs);
    }
  });
  return articles;
}

std::vector<StanceMap> article_stances(std::span<const Article> articles,
                                       const ValenceLexicon& lexicon, std::size_t jobs) {
  std::vector<StanceMap> out(articles.size());
  parallel_for(articles.size(), jobs, [&](std::size_t i) {
    out[i] = article_stance(resolve_article(articles[i]), lexicon);
  });
  return out;
}

ClassStances class_stances(std::span<const Article> articles, const ValenceLexicon& lexicon,
                           std::size_t jobs) {
  const auto per_article = article_stances(articles, lexicon, jobs);
  ClassStances out;
  for (Leaning l : kLeanings) {
    std::vector<StanceMap> members;
    for (std::size_t i = 0; i < articles.size(); ++i) {
      if (articles[i].leaning == l) members.push_back(per_article[i]);
    }
    out[l] = corpus_stance(members);
  }
  return out;
}

TrainResult train(const std::vector<Article>& corpus, const ValenceLexicon& lexicon,
                  const TrainOptions& options) {
  TrainResult r;
  auto balanced = balance(corpus, options.cap, options.seed);
  r.balanced_size = balanced.size();
  r.split = split(balanced, options.train_fraction, options.seed);
  r.coref = options.substitutions ? CorefMode::External : CorefMode::Baseline;
  const auto resolved = resolve_coreferences(r.split.train, options.substitutions, options.jobs);
  r.space = build_space(class_stances(resolved, lexicon, options.jobs), options.min_mentions);
  return r;
}

std::vector<Prediction> classify_all(std::span<const Article> articles, const LeaningSpace& space,
                                     const ValenceLexicon& lexicon, std::size_t jobs) {
  std::vector<Prediction> out(articles.size());
  parallel_for(articles.size(), jobs, [&](std::size_t i) {
    try {
      out[i] = to_prediction(classify(articles[i], space, lexicon));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::unclassifiable) throw;
      out[i] = unclassifiable_prediction(articles[i].id);
    }
  });
  return out;
}

}  // namespace polstance
