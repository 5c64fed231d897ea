#include "polstance/corpus.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "json.hpp"
#include "polstance/error.hpp"
#include "polstance/random.hpp"

namespace polstance {

using json = nlohmann::json;

namespace {

std::string required_string(const json& obj, const char* field, std::size_t line_no) {
  auto it = obj.find(field);
  if (it == obj.end() || !it->is_string()) {
    throw Error(ErrorKind::parse, "corpus line " + std::to_string(line_no) +
                                      ": missing or non-string field '" + field + "'");
  }
  return it->get<std::string>();
}

void require_labeled(const std::vector<Article>& corpus, const char* op) {
  for (const auto& a : corpus) {
    if (a.leaning == Leaning::Unlabeled) {
      throw Error(ErrorKind::invariant,
                  std::string(op) + ": article '" + a.id + "' has no leaning label");
    }
  }
}

}  // namespace

std::vector<Article> parse_corpus(std::istream& in, std::optional<DateWindow> window,
                                  std::size_t* dropped) {
  std::vector<Article> out;
  std::unordered_set<std::string> seen;
  std::size_t skipped = 0;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::parse,
                  "corpus line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.is_object()) {
      throw Error(ErrorKind::parse, "corpus line " + std::to_string(line_no) +
                                        ": expected a JSON object");
    }
    Article a;
    a.id = required_string(obj, "id", line_no);
    a.outlet = required_string(obj, "outlet", line_no);
    a.leaning = parse_leaning(required_string(obj, "leaning", line_no));
    const auto date_text = required_string(obj, "published_at", line_no);
    auto date = parse_date(date_text);
    if (!date) {
      throw Error(ErrorKind::parse, "corpus line " + std::to_string(line_no) +
                                        ": bad published_at '" + date_text + "'");
    }
    a.published_at = *date;
    a.title = required_string(obj, "title", line_no);
    a.text = required_string(obj, "text", line_no);

    if (!seen.insert(a.id).second) {
      throw Error(ErrorKind::duplicate_id, "duplicate article id '" + a.id + "' at line " +
                                               std::to_string(line_no));
    }
    if (window && !window->contains(a.published_at)) {
      ++skipped;
      continue;
    }
    out.push_back(std::move(a));
  }
  if (dropped) *dropped = skipped;
  return out;
}

std::vector<Article> load_corpus(const std::filesystem::path& path,
                                 std::optional<DateWindow> window, std::size_t* dropped) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::missing_input, "cannot open corpus " + path.string());
  return parse_corpus(in, window, dropped);
}

void write_corpus(std::ostream& out, const std::vector<Article>& corpus) {
  for (const auto& a : corpus) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    obj["id"] = a.id;
    obj["outlet"] = a.outlet;
    obj["leaning"] = to_string(a.leaning);
    obj["published_at"] = format_date(a.published_at);
    obj["title"] = a.title;
    obj["text"] = a.text;
    out << obj.dump() << '\n';
  }
}

std::vector<Article> balance(const std::vector<Article>& corpus, std::size_t cap,
                             std::uint64_t seed) {
  if (cap == 0) throw Error(ErrorKind::config, "balance: cap must be at least 1");
  require_labeled(corpus, "balance");

  SeededRng rng(seed);
  std::vector<bool> removed(corpus.size(), false);
  for (Leaning leaning : kLeanings) {
    std::map<std::pair<std::string, QuarterKey>, std::vector<std::size_t>> cells;
    std::size_t size = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].leaning != leaning) continue;
      cells[{corpus[i].outlet, corpus[i].quarter()}].push_back(i);
      ++size;
    }
    if (size == 0) {
      throw Error(ErrorKind::invariant, "balance: class '" + std::string(to_string(leaning)) +
                                            "' has no articles");
    }
    std::vector<std::vector<std::size_t>*> largest;
    for (; size > cap; --size) {
      largest.clear();
      std::size_t best = 0;
      for (auto& [key, members] : cells) {
        if (members.size() > best) {
          best = members.size();
          largest.clear();
        }
        if (members.size() == best) largest.push_back(&members);
      }
      auto& cell = *largest[rng.index(largest.size())];
      const std::size_t pick = rng.index(cell.size());
      removed[cell[pick]] = true;
      cell[pick] = cell.back();
      cell.pop_back();
    }
  }

  std::vector<Article> out;
  out.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!removed[i]) out.push_back(corpus[i]);
  }
  return out;
}

Split split(const std::vector<Article>& corpus, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorKind::config, "split: train fraction must lie strictly between 0 and 1");
  }
  require_labeled(corpus, "split");

  std::map<std::pair<Leaning, QuarterKey>, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    cells[{corpus[i].leaning, corpus[i].quarter()}].push_back(i);
  }

  SeededRng rng(seed);
  std::vector<bool> to_train(corpus.size(), false);
  for (auto& [key, members] : cells) {
    rng.shuffle(std::span<std::size_t>(members));
    const auto n_train = static_cast<std::size_t>(
        std::lround(train_fraction * static_cast<double>(members.size())));
    for (std::size_t k = 0; k < n_train; ++k) to_train[members[k]] = true;
  }

  Split out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    (to_train[i] ? out.train : out.test).push_back(corpus[i]);
  }
  return out;
}

void CorpusStats::add(const Article& a) { ++cells_[{a.leaning, a.outlet, a.quarter()}]; }

std::size_t CorpusStats::total() const {
  std::size_t n = 0;
  for (const auto& [key, count] : cells_) n += count;
  return n;
}

std::map<Leaning, std::size_t> CorpusStats::by_leaning() const {
  std::map<Leaning, std::size_t> out;
  for (const auto& [key, count] : cells_) out[key.leaning] += count;
  return out;
}

std::map<std::string, std::size_t> CorpusStats::by_outlet() const {
  std::map<std::string, std::size_t> out;
  for (const auto& [key, count] : cells_) out[key.outlet] += count;
  return out;
}

std::map<QuarterKey, std::size_t> CorpusStats::by_quarter() const {
  std::map<QuarterKey, std::size_t> out;
  for (const auto& [key, count] : cells_) out[key.quarter] += count;
  return out;
}

std::size_t CorpusStats::count(const StatsKey& key) const {
  auto it = cells_.find(key);
  return it == cells_.end() ? 0 : it->second;
}

void CorpusStats::write_tsv(std::ostream& out) const {
  out << "leaning\toutlet\tquarter\tcount\n";
  for (const auto& [key, count] : cells_) {
    out << to_string(key.leaning) << '\t' << key.outlet << '\t' << key.quarter.label() << '\t'
        << count << '\n';
  }
}

CorpusStats stats(const std::vector<Article>& corpus) {
  CorpusStats s;
  for (const auto& a : corpus) s.add(a);
  return s;
}

}  // namespace polstance
