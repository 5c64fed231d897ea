#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "polstance/classifier.hpp"
#include "polstance/refres.hpp"
#include "polstance/types.hpp"

namespace polstance {

struct ClassScore {
  Prf prf;
  std::size_t support = 0;         // gold articles of this class that were classified
  std::size_t unclassifiable = 0;  // gold articles of this class with no prediction label
};

struct ClassMetrics {
  std::array<ClassScore, 3> classes;  // by leaning_slot
  std::size_t unclassifiable_count = 0;
  std::size_t total = 0;
  bool strict = false;

  const ClassScore& operator[](Leaning l) const { return classes.at(leaning_slot(l)); }
};

using GoldLabel = std::pair<std::string, Leaning>;

/// One-vs-rest counts per class. Unclassifiable articles are kept out of
/// support; outside strict mode they still count as misses of their gold class.
/// Throws ErrorKind::missing_input listing gold ids without a prediction.
ClassMetrics score(std::span<const Prediction> predictions, std::span<const GoldLabel> gold,
                   bool strict = false);

std::vector<GoldLabel> gold_labels(std::span<const Article> corpus);

/// Precision / Recall / F1-Score rows for Left, Center, Right.
void write_metrics_table(std::ostream& out, const ClassMetrics& m);
void write_metrics_tsv(std::ostream& out, const ClassMetrics& m);
nlohmann::ordered_json to_json(const ClassMetrics& m);

struct QuarterRow {
  std::array<std::size_t, 3> counts{};  // by leaning_slot
  std::size_t unclassifiable = 0;

  std::size_t classified() const { return counts[0] + counts[1] + counts[2]; }
  std::size_t n() const { return classified() + unclassifiable; }
  /// Share among classified articles, 0 when none were classified.
  double fraction(Leaning l) const;
};

using QuarterDistribution = std::map<QuarterKey, QuarterRow>;

/// Groups predictions by their article's calendar quarter. Throws
/// ErrorKind::missing_input when a prediction names an unknown article.
QuarterDistribution temporal_apply(std::span<const Prediction> predictions,
                                   std::span<const Article> articles);

/// Shade band 0..4 for a fraction (higher is darker).
int shade_band(double fraction);

/// Two-decimal rendering without trailing zeros past the first ("0.1", "0.49", "1.0").
std::string format_fraction(double value);

/// "quarter,left,center,right,n" with two-decimal fractions.
void write_distribution_csv(std::ostream& out, const QuarterDistribution& d);
/// Leanings as rows, quarters as columns; each cell "0.49 [2]" with its shade band.
void write_distribution_table(std::ostream& out, const QuarterDistribution& d);
nlohmann::ordered_json to_json(const QuarterDistribution& d);

}  // namespace polstance
