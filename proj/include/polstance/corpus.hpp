#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "polstance/types.hpp"

namespace polstance {

/// Reads one JSON object per line: id, outlet, leaning, published_at, title,
/// text. Blank lines are skipped. With a window, out-of-window articles are
/// dropped and `dropped` (if given) receives their count.
std::vector<Article> load_corpus(const std::filesystem::path& path,
                                 std::optional<DateWindow> window = std::nullopt,
                                 std::size_t* dropped = nullptr);
std::vector<Article> parse_corpus(std::istream& in, std::optional<DateWindow> window = std::nullopt,
                                  std::size_t* dropped = nullptr);

/// Inverse of parse_corpus (metadata only, parsed sentences are not written).
void write_corpus(std::ostream& out, const std::vector<Article>& corpus);

/// Caps every leaning class at `cap` articles. Removals come one at a time from
/// the currently largest (outlet, quarter) cell of the class; equal cells and
/// the removed article are picked with the seeded RNG. Survivors keep their
/// input order.
std::vector<Article> balance(const std::vector<Article>& corpus, std::size_t cap,
                             std::uint64_t seed);

struct Split {
  std::vector<Article> train;
  std::vector<Article> test;
};

/// Stratified per (leaning, quarter) cell: each cell sends
/// round(train_fraction * size) articles to train. Both halves keep input order.
Split split(const std::vector<Article>& corpus, double train_fraction, std::uint64_t seed);

struct StatsKey {
  Leaning leaning;
  std::string outlet;
  QuarterKey quarter;

  auto operator<=>(const StatsKey&) const = default;
};

class CorpusStats {
public:
  void add(const Article& a);

  const std::map<StatsKey, std::size_t>& cells() const { return cells_; }
  std::size_t total() const;
  std::map<Leaning, std::size_t> by_leaning() const;
  std::map<std::string, std::size_t> by_outlet() const;
  std::map<QuarterKey, std::size_t> by_quarter() const;
  std::size_t count(const StatsKey& key) const;

  /// Header "leaning\toutlet\tquarter\tcount", one row per nonempty cell.
  void write_tsv(std::ostream& out) const;

private:
  std::map<StatsKey, std::size_t> cells_;
};

CorpusStats stats(const std::vector<Article>& corpus);

}  // namespace polstance
