#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <unordered_map>

#include "json.hpp"
#include "polstance/insertion_map.hpp"
#include "polstance/refres.hpp"

namespace polstance {

/// Lowercased lemma -> valence in [-1, 1].
class ValenceLexicon {
public:
  ValenceLexicon() = default;

  /// Throws ErrorKind::out_of_range for scores outside [-1, 1].
  void set(const std::string& lemma, double score);
  const double* find(const std::string& lemma) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

private:
  std::unordered_map<std::string, double> entries_;
};

/// TSV, one "lemma<TAB>score" per line; later duplicates win. Blank lines and
/// lines starting with '#' are ignored.
ValenceLexicon parse_lexicon(std::istream& in);
ValenceLexicon load_lexicon(const std::filesystem::path& path);

struct NounStance {
  double mean = 0.0;
  std::size_t count = 0;

  bool operator==(const NounStance&) const = default;
};

/// Noun key -> mean descriptor valence, in first-mention order.
using StanceMap = InsertionMap<NounStance>;

/// Averages the lexicon valences of each noun's descriptors. Descriptors the
/// lexicon lacks are skipped; nouns left with none are dropped.
StanceMap article_stance(const DescriptorMap& descriptors, const ValenceLexicon& lexicon);

/// Mention-weighted merge: mean = sum(mean_i * count_i) / sum(count_i).
StanceMap corpus_stance(std::span<const StanceMap> articles);

nlohmann::ordered_json to_json(const StanceMap& stance);
StanceMap stance_from_json(const nlohmann::ordered_json& j);

}  // namespace polstance
