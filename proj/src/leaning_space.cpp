#include "polstance/leaning_space.hpp"

#include <fstream>
#include <sstream>

#include "polstance/error.hpp"
#include "polstance/io.hpp"

namespace polstance {

using ojson = nlohmann::ordered_json;

namespace {

constexpr std::array<Leaning, 3> kIndexOrder = {Leaning::Left, Leaning::Right, Leaning::Center};

}  // namespace

std::size_t NounIndex::add(const std::string& noun) {
  auto [it, inserted] = position_.try_emplace(noun, nouns_.size());
  if (inserted) nouns_.push_back(noun);
  return it->second;
}

std::optional<std::size_t> NounIndex::find(const std::string& noun) const {
  auto it = position_.find(noun);
  if (it == position_.end()) return std::nullopt;
  return it->second;
}

NounIndex build_index(const ClassStances& stances, std::size_t min_mentions) {
  NounIndex index;
  for (Leaning l : kIndexOrder) {
    auto it = stances.find(l);
    if (it == stances.end()) continue;
    for (const auto& [noun, s] : it->second) {
      if (s.count >= min_mentions) index.add(noun);
    }
  }
  if (index.size() == 0) {
    throw Error(ErrorKind::invariant, "cannot build a noun index from empty stance maps");
  }
  return index;
}

bool LeaningSpace::operator==(const LeaningSpace& other) const {
  if (!(index == other.index)) return false;
  for (std::size_t c = 0; c < vectors.size(); ++c) {
    if (vectors[c].size() != other.vectors[c].size() || vectors[c] != other.vectors[c]) {
      return false;
    }
  }
  return true;
}

LeaningSpace build_space(const ClassStances& stances, std::size_t min_mentions) {
  LeaningSpace space;
  space.index = build_index(stances, min_mentions);
  const auto n = static_cast<Eigen::Index>(space.index.size());
  for (Leaning l : kLeanings) {
    auto& v = space.vectors[leaning_slot(l)];
    v = StanceVector::Zero(n);
    auto it = stances.find(l);
    if (it == stances.end()) continue;
    for (const auto& [noun, s] : it->second) {
      if (s.count < min_mentions) continue;
      v(static_cast<Eigen::Index>(*space.index.find(noun))) = s.mean;
    }
  }
  return space;
}

StanceVector project(const StanceMap& article, const NounIndex& index) {
  StanceVector v = StanceVector::Zero(static_cast<Eigen::Index>(index.size()));
  for (const auto& [noun, s] : article) {
    if (auto k = index.find(noun)) v(static_cast<Eigen::Index>(*k)) = s.mean;
  }
  return v;
}

ojson space_to_json(const LeaningSpace& space, const ojson& provenance) {
  ojson j = ojson::object();
  j["version"] = kModelVersion;
  if (provenance.is_object()) {
    for (const auto& [key, value] : provenance.items()) j[key] = value;
  }
  j["nouns"] = space.index.nouns();
  ojson vectors = ojson::object();
  for (Leaning l : kIndexOrder) {
    const auto& v = space.vector(l);
    vectors[std::string(to_string(l))] = std::vector<double>(v.data(), v.data() + v.size());
  }
  j["vectors"] = std::move(vectors);
  return j;
}

LeaningSpace space_from_json(const ojson& j) {
  try {
    const int version = j.at("version").get<int>();
    if (version != kModelVersion) {
      throw Error(ErrorKind::version_mismatch, "model version " + std::to_string(version) +
                                                   ", expected " +
                                                   std::to_string(kModelVersion));
    }
    LeaningSpace space;
    for (const auto& noun : j.at("nouns")) {
      const auto key = noun.get<std::string>();
      if (space.index.add(key) + 1 != space.index.size()) {
        throw Error(ErrorKind::invariant, "model lists noun '" + key + "' twice");
      }
    }
    const auto& vectors = j.at("vectors");
    for (Leaning l : kLeanings) {
      const auto values = vectors.at(std::string(to_string(l))).get<std::vector<double>>();
      if (values.size() != space.index.size()) {
        throw Error(ErrorKind::invariant,
                    "model vector '" + std::string(to_string(l)) + "' has length " +
                        std::to_string(values.size()) + ", expected " +
                        std::to_string(space.index.size()));
      }
      space.vectors[leaning_slot(l)] =
          Eigen::Map<const StanceVector>(values.data(), static_cast<Eigen::Index>(values.size()));
    }
    return space;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("model file: ") + e.what());
  }
}

void save_space(const std::filesystem::path& path, const LeaningSpace& space,
                const ojson& provenance) {
  write_file_atomic(path, space_to_json(space, provenance).dump(2) + "\n");
}

LeaningSpace load_space(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::missing_input, "cannot open model " + path.string());
  ojson j;
  try {
    j = ojson::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, "model file " + path.string() + ": " + e.what());
  }
  return space_from_json(j);
}

}  // namespace polstance
