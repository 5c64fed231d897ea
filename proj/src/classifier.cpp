#include "polstance/classifier.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include "polstance/refres.hpp"

namespace polstance {

using ojson = nlohmann::ordered_json;

ClassificationResult classify_vector(const std::string& article_id, const StanceVector& article,
                                     const LeaningSpace& space) {
  if (article.size() != static_cast<Eigen::Index>(space.dimension())) {
    throw Error(ErrorKind::invariant, "article vector does not match the model dimension");
  }
  if (article.isZero(0.0)) {
    throw Error(ErrorKind::unclassifiable,
                "article '" + article_id + "' shares no scored noun with the model");
  }

  ClassificationResult r;
  r.article_id = article_id;
  for (Leaning l : kLeanings) {
    const auto& v = space.vector(l);
    r.distances[leaning_slot(l)] = v.isZero(0.0) ? 1.0 : cosine_distance(article, v);
  }

  const double best = *std::min_element(r.distances.begin(), r.distances.end());
  std::size_t within = 0;
  for (Leaning l : kLeanings) {
    if (r.distances[leaning_slot(l)] - best <= kTieTolerance) {
      if (within++ == 0) r.predicted = l;
    }
  }
  r.tie_flag = within > 1;

  for (Eigen::Index k = 0; k < article.size(); ++k) {
    if (article(k) == 0.0) continue;
    Contribution c;
    c.noun = space.index.noun(static_cast<std::size_t>(k));
    c.article_stance = article(k);
    for (Leaning l : kLeanings) c.per_class[leaning_slot(l)] = article(k) * space.vector(l)(k);
    r.contributions.push_back(std::move(c));
  }
  return r;
}

ClassificationResult classify(const Article& article, const LeaningSpace& space,
                              const ValenceLexicon& lexicon) {
  const auto stance = article_stance(resolve_article(article), lexicon);
  return classify_vector(article.id, project(stance, space.index), space);
}

std::vector<Contribution> explain(const ClassificationResult& result, std::size_t top_k) {
  std::vector<Contribution> ranked = result.contributions;
  const auto slot = leaning_slot(result.predicted);
  std::stable_sort(ranked.begin(), ranked.end(), [slot](const auto& a, const auto& b) {
    return std::abs(a.per_class[slot]) > std::abs(b.per_class[slot]);
  });
  if (ranked.size() > top_k) ranked.resize(top_k);
  return ranked;
}

Prediction to_prediction(const ClassificationResult& result) {
  Prediction p;
  p.article_id = result.article_id;
  p.predicted = result.predicted;
  p.distances = result.distances;
  p.tie_flag = result.tie_flag;
  return p;
}

Prediction unclassifiable_prediction(const std::string& article_id) {
  Prediction p;
  p.article_id = article_id;
  return p;
}

namespace {

ojson per_class(const std::array<double, 3>& values) {
  ojson j = ojson::object();
  for (Leaning l : kLeanings) j[std::string(to_string(l))] = values[leaning_slot(l)];
  return j;
}

std::array<double, 3> per_class_from(const ojson& j) {
  std::array<double, 3> out{};
  for (Leaning l : kLeanings) out[leaning_slot(l)] = j.at(std::string(to_string(l))).get<double>();
  return out;
}

}  // namespace

ojson to_json(const Prediction& p) {
  ojson j = ojson::object();
  j["article_id"] = p.article_id;
  j["model"] = p.model;
  j["predicted"] = p.predicted ? std::string(to_string(*p.predicted)) : "unclassifiable";
  if (p.distances) j["distances"] = per_class(*p.distances);
  if (p.probabilities) j["probabilities"] = per_class(*p.probabilities);
  j["tie_flag"] = p.tie_flag;
  return j;
}

Prediction prediction_from_json(const ojson& j) {
  Prediction p;
  p.article_id = j.at("article_id").get<std::string>();
  p.model = j.value("model", std::string("rule"));
  const auto label = j.at("predicted").get<std::string>();
  if (label != "unclassifiable") {
    const Leaning l = parse_leaning(label);
    if (l == Leaning::Unlabeled) {
      throw Error(ErrorKind::parse, "prediction for '" + p.article_id +
                                        "' has unknown label '" + label + "'");
    }
    p.predicted = l;
  }
  if (auto it = j.find("distances"); it != j.end() && !it->is_null()) {
    p.distances = per_class_from(*it);
  }
  if (auto it = j.find("probabilities"); it != j.end() && !it->is_null()) {
    p.probabilities = per_class_from(*it);
  }
  p.tie_flag = j.value("tie_flag", false);
  return p;
}

std::vector<Prediction> parse_predictions(std::istream& in) {
  std::vector<Prediction> out;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(prediction_from_json(ojson::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::parse,
                  "predictions line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Prediction> load_predictions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::missing_input, "cannot open predictions " + path.string());
  return parse_predictions(in);
}

}  // namespace polstance
