#include "polstance/stance.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "polstance/error.hpp"

namespace polstance {

void ValenceLexicon::set(const std::string& lemma, double score) {
  if (!(score >= -1.0 && score <= 1.0)) {
    throw Error(ErrorKind::out_of_range,
                "valence for '" + lemma + "' outside [-1, 1]: " + std::to_string(score));
  }
  entries_[to_lower(lemma)] = score;
}

const double* ValenceLexicon::find(const std::string& lemma) const {
  auto it = entries_.find(lemma);
  return it == entries_.end() ? nullptr : &it->second;
}

ValenceLexicon parse_lexicon(std::istream& in) {
  ValenceLexicon lex;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    const auto where = "lexicon line " + std::to_string(line_no);
    if (tab == std::string::npos || tab == 0) {
      throw Error(ErrorKind::parse, where + ": expected lemma<TAB>score");
    }
    const char* first = line.data() + tab + 1;
    const char* last = line.data() + line.size();
    double score = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, score);
    if (ec != std::errc{} || ptr != last) {
      throw Error(ErrorKind::parse, where + ": non-numeric score '" + std::string(first, last) + "'");
    }
    try {
      lex.set(line.substr(0, tab), score);
    } catch (const Error& e) {
      throw Error(e.kind(), where + ": " + e.what());
    }
  }
  return lex;
}

ValenceLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::missing_input, "cannot open lexicon " + path.string());
  return parse_lexicon(in);
}

StanceMap article_stance(const DescriptorMap& descriptors, const ValenceLexicon& lexicon) {
  StanceMap out;
  for (const auto& [noun, list] : descriptors) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& d : list) {
      if (const double* v = lexicon.find(d.lemma)) {
        sum += *v;
        ++n;
      }
    }
    if (n == 0) continue;
    out[noun] = {std::clamp(sum / static_cast<double>(n), -1.0, 1.0), n};
  }
  return out;
}

StanceMap corpus_stance(std::span<const StanceMap> articles) {
  struct Acc {
    double weighted = 0.0;
    std::size_t count = 0;
    std::size_t parts = 0;
    double only_mean = 0.0;
  };
  InsertionMap<Acc> sums;
  for (const auto& stance : articles) {
    for (const auto& [noun, s] : stance) {
      auto& acc = sums[noun];
      acc.weighted += s.mean * static_cast<double>(s.count);
      acc.count += s.count;
      acc.only_mean = s.mean;
      ++acc.parts;
    }
  }
  StanceMap out;
  for (const auto& [noun, acc] : sums) {
    if (acc.count == 0) continue;
    // A single contributor is copied as-is; mean*count/count need not round-trip.
    const double mean = acc.parts == 1 ? acc.only_mean
                                       : acc.weighted / static_cast<double>(acc.count);
    out[noun] = {std::clamp(mean, -1.0, 1.0), acc.count};
  }
  return out;
}

nlohmann::ordered_json to_json(const StanceMap& stance) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [noun, s] : stance) j[noun] = {{"mean", s.mean}, {"count", s.count}};
  return j;
}

StanceMap stance_from_json(const nlohmann::ordered_json& j) {
  StanceMap out;
  for (const auto& [noun, v] : j.items()) {
    out[noun] = {v.at("mean").get<double>(), v.at("count").get<std::size_t>()};
  }
  return out;
}

}  // namespace polstance
