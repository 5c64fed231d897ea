#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "polstance/classifier.hpp"
#include "polstance/coref.hpp"
#include "polstance/corpus.hpp"
#include "polstance/leaning_space.hpp"
#include "polstance/stance.hpp"

namespace polstance {

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
/// thrown by any worker is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(jobs);
  {
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < n; i += jobs) fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/// Flags and file paths of one CLI run. Only fields that were set take part
/// in the digest.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> values;

  /// "command;key=value;..." with keys sorted.
  std::string canonical() const;
  std::string digest() const;
};

enum class CorefMode { External, Baseline };

std::string_view to_string(CorefMode m);

/// Applies the external substitutions when a table is given (articles missing
/// from it are left as parsed), otherwise the baseline heuristic.
std::vector<Article> resolve_coreferences(std::vector<Article> articles,
                                          const SubstitutionTable* table, std::size_t jobs = 1);

std::vector<StanceMap> article_stances(std::span<const Article> articles,
                                       const ValenceLexicon& lexicon, std::size_t jobs = 1);

/// Per-article extraction, then one mention-weighted merge per class.
ClassStances class_stances(std::span<const Article> articles, const ValenceLexicon& lexicon,
                           std::size_t jobs = 1);

struct TrainOptions {
  std::size_t cap = 10000;
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  std::size_t min_mentions = 1;
  std::size_t jobs = 1;
  const SubstitutionTable* substitutions = nullptr;
};

struct TrainResult {
  LeaningSpace space;
  Split split;
  std::size_t balanced_size = 0;
  CorefMode coref = CorefMode::Baseline;
};

/// balance -> split -> coref -> reference resolution -> stance -> build_space.
/// The corpus must already carry its parsed sentences.
TrainResult train(const std::vector<Article>& corpus, const ValenceLexicon& lexicon,
                  const TrainOptions& options);

/// Classifies each (already coref-substituted) article. Unclassifiable
/// articles yield a prediction with no label instead of an error.
std::vector<Prediction> classify_all(std::span<const Article> articles, const LeaningSpace& space,
                                     const ValenceLexicon& lexicon, std::size_t jobs = 1);

}  // namespace polstance
