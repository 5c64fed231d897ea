#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "polstance/stance.hpp"
#include "polstance/types.hpp"

namespace polstance {

/// Dense stance vector over the shared noun index.
template <typename Scalar>
using StanceVectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using StanceVector = StanceVectorT<double>;

/// Bijection noun key <-> 0..N-1.
class NounIndex {
public:
  /// Returns the noun's position, appending it if new.
  std::size_t add(const std::string& noun);
  std::optional<std::size_t> find(const std::string& noun) const;
  const std::string& noun(std::size_t k) const { return nouns_[k]; }
  const std::vector<std::string>& nouns() const { return nouns_; }
  std::size_t size() const { return nouns_.size(); }

  bool operator==(const NounIndex& other) const { return nouns_ == other.nouns_; }

private:
  std::vector<std::string> nouns_;
  std::unordered_map<std::string, std::size_t> position_;
};

using ClassStances = std::map<Leaning, StanceMap>;

/// Union of all class nouns, first appearance over Left, Right, Center.
/// Nouns with fewer than `min_mentions` mentions in a class are ignored for
/// that class. Throws ErrorKind::invariant when nothing survives.
NounIndex build_index(const ClassStances& stances, std::size_t min_mentions = 1);

struct LeaningSpace {
  NounIndex index;
  std::array<StanceVector, 3> vectors;  // by leaning_slot(Left/Center/Right)

  const StanceVector& vector(Leaning l) const { return vectors.at(leaning_slot(l)); }
  std::size_t dimension() const { return index.size(); }

  bool operator==(const LeaningSpace& other) const;
};

/// Position k of class c holds c's stance toward noun k, 0 where c never
/// mentions it.
LeaningSpace build_space(const ClassStances& stances, std::size_t min_mentions = 1);

/// Article stance over the index; nouns outside the index are dropped.
StanceVector project(const StanceMap& article, const NounIndex& index);

inline constexpr int kModelVersion = 1;

/// {version, nouns, vectors: {left, right, center}} plus optional provenance
/// fields merged at top level.
nlohmann::ordered_json space_to_json(const LeaningSpace& space,
                                     const nlohmann::ordered_json& provenance = {});
LeaningSpace space_from_json(const nlohmann::ordered_json& j);

void save_space(const std::filesystem::path& path, const LeaningSpace& space,
                const nlohmann::ordered_json& provenance = {});
LeaningSpace load_space(const std::filesystem::path& path);

}  // namespace polstance
