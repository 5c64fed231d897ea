#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "polstance/error.hpp"
#include "polstance/leaning_space.hpp"
#include "polstance/stance.hpp"

namespace polstance {

/// 1 - a.b / (|a||b|), clamped to [0, 2]. Throws ErrorKind::unclassifiable when
/// either side is all zeros, ErrorKind::invariant on a length mismatch.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine_distance(const Eigen::MatrixBase<DerivedA>& a,
                                          const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  if (a.size() != b.size()) {
    throw Error(ErrorKind::invariant, "cosine_distance: vectors differ in length");
  }
  const Scalar na = a.norm();
  const Scalar nb = b.norm();
  if (na == Scalar(0) || nb == Scalar(0)) {
    throw Error(ErrorKind::unclassifiable, "cosine_distance: zero vector");
  }
  const Scalar similarity = a.dot(b) / (na * nb);
  return Scalar(1) - std::clamp(similarity, Scalar(-1), Scalar(1));
}

inline constexpr double kTieTolerance = 1e-9;

struct Contribution {
  std::string noun;
  double article_stance = 0.0;
  std::array<double, 3> per_class{};  // article_stance * class stance, by leaning_slot
};

struct ClassificationResult {
  std::string article_id;
  std::array<double, 3> distances{};  // by leaning_slot
  Leaning predicted = Leaning::Unlabeled;
  bool tie_flag = false;
  std::vector<Contribution> contributions;  // nonzero article coordinates, index order
};

/// Argmin over the three class distances. Distances within kTieTolerance of
/// the minimum tie; the first of Left, Center, Right wins and tie_flag is set.
/// A class whose vector is all zeros sits at distance 1.
ClassificationResult classify_vector(const std::string& article_id, const StanceVector& article,
                                     const LeaningSpace& space);

/// resolve_article -> article_stance -> project -> classify_vector. Throws
/// ErrorKind::unclassifiable when the article shares no scored noun with the
/// space.
ClassificationResult classify(const Article& article, const LeaningSpace& space,
                              const ValenceLexicon& lexicon);

/// Top `top_k` contributions by |article stance * predicted-class stance|,
/// ties to index order.
std::vector<Contribution> explain(const ClassificationResult& result, std::size_t top_k);

/// One line of the prediction JSONL shared by every model.
struct Prediction {
  std::string article_id;
  std::string model = "rule";
  std::optional<Leaning> predicted;  // nullopt: unclassifiable
  std::optional<std::array<double, 3>> distances;
  std::optional<std::array<double, 3>> probabilities;
  bool tie_flag = false;
};

Prediction to_prediction(const ClassificationResult& result);
Prediction unclassifiable_prediction(const std::string& article_id);

nlohmann::ordered_json to_json(const Prediction& p);
Prediction prediction_from_json(const nlohmann::ordered_json& j);
std::vector<Prediction> parse_predictions(std::istream& in);
std::vector<Prediction> load_predictions(const std::filesystem::path& path);

}  // namespace polstance
