#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polstance/insertion_map.hpp"
#include "polstance/types.hpp"

namespace polstance {

/// Nearest noun inside a token's own subtree.
struct MemoEntry {
  int distance = -1;                // edges down to the noun, -1 if the subtree has none
  std::optional<std::size_t> noun;  // token index of that noun

  bool operator==(const MemoEntry&) const = default;
};

enum class DescriptorKind { Verb, Adjective };

std::string_view to_string(DescriptorKind k);
DescriptorKind parse_descriptor_kind(std::string_view s);

/// A verb or adjective linked to the noun it is taken to describe.
struct RefAssignment {
  std::size_t source_index = 0;
  std::size_t noun_index = 0;
  int distance = 0;
  DescriptorKind kind = DescriptorKind::Verb;

  bool operator==(const RefAssignment&) const = default;
};

/// Elementary step counter for complexity checks.
struct OpCounter {
  std::size_t steps = 0;
};

/// Children-first pass: entry i holds the closest NOUN/PROPN in the subtree
/// rooted at token i (ties to the smaller token index). Throws
/// ErrorKind::malformed_tree if the heads do not form a single-rooted tree.
std::vector<MemoEntry> build_memo(const DepSentence& sentence, OpCounter* ops = nullptr);

/// For every VERB/ADJ token, the nearest noun anywhere in the tree: its own
/// memo entry, then ancestors k edges up contributing k + memo distance. The
/// climb stops once k exceeds the best total found, since no higher ancestor
/// can do better. Ties go to the smaller total, then the smaller noun index.
std::vector<RefAssignment> resolve(const DepSentence& sentence, std::span<const MemoEntry> memo,
                                   OpCounter* ops = nullptr);
std::vector<RefAssignment> resolve(const DepSentence& sentence);

struct Descriptor {
  std::string lemma;
  DescriptorKind kind = DescriptorKind::Verb;

  bool operator==(const Descriptor&) const = default;
};

/// Noun key (lowercased lemma) -> descriptors in text order.
using DescriptorMap = InsertionMap<std::vector<Descriptor>>;

DescriptorMap resolve_article(const Article& article);

struct GoldRelation {
  std::string sentence_id;
  std::size_t source_index = 0;
  std::size_t noun_index = 0;
  DescriptorKind kind = DescriptorKind::Verb;

  bool operator==(const GoldRelation&) const = default;
};

/// JSONL rows {sentence_id, source_index, noun_index, kind: "verb"|"adjective"}.
std::vector<GoldRelation> parse_gold(std::istream& in);
std::vector<GoldRelation> load_gold(const std::filesystem::path& path);

struct SentencePrediction {
  std::string sentence_id;
  std::vector<RefAssignment> assignments;
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

/// Precision/recall/F1 from raw counts; each is 0 when its denominator is 0.
Prf prf_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

struct RefresScores {
  Prf verb;
  Prf adjective;
};

/// A prediction is a true positive iff (sentence, source, noun, kind) is in
/// gold. Every gold sentence id must appear among the predictions.
RefresScores eval_refres(std::span<const SentencePrediction> predicted,
                         std::span<const GoldRelation> gold);

/// Runs build_memo + resolve over every sentence of the documents.
std::vector<SentencePrediction> predict_relations(std::span<const DepSentence> sentences);

}  // namespace polstance
