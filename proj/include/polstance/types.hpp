#pragma once

#include <array>
#include <chrono>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polstance {

enum class Leaning { Left, Center, Right, Unlabeled };

/// The three labeled classes, in the fixed tie-break order.
inline constexpr std::array<Leaning, 3> kLeanings = {Leaning::Left, Leaning::Center,
                                                     Leaning::Right};

constexpr std::size_t leaning_slot(Leaning l) { return static_cast<std::size_t>(l); }

std::string_view to_string(Leaning l);
/// "left"/"center"/"right" (any case); everything else is Unlabeled.
Leaning parse_leaning(std::string_view s);

using Date = std::chrono::year_month_day;

/// Accepts "YYYY-MM-DD" optionally followed by a time part ("T..." or " ...").
std::optional<Date> parse_date(std::string_view s);
std::string format_date(const Date& d);

struct QuarterKey {
  int year = 0;
  int quarter = 1;

  static QuarterKey of(const Date& d);
  /// "21Q2" style label.
  std::string label() const;

  auto operator<=>(const QuarterKey&) const = default;
};

struct DateWindow {
  Date first;
  Date last;

  bool contains(const Date& d) const { return first <= d && d <= last; }
  /// "YYYY-MM-DD:YYYY-MM-DD".
  static DateWindow parse(std::string_view s);
};

/// Universal POS tags.
enum class Upos {
  ADJ, ADP, ADV, AUX, CCONJ, DET, INTJ, NOUN, NUM, PART, PRON, PROPN, PUNCT, SCONJ, SYM, VERB, X,
};

Upos parse_upos(std::string_view s);
std::string_view to_string(Upos u);

constexpr bool is_nominal(Upos u) { return u == Upos::NOUN || u == Upos::PROPN; }
constexpr bool is_descriptor(Upos u) { return u == Upos::VERB || u == Upos::ADJ; }

struct DepToken {
  std::size_t index = 0;
  std::string surface;
  std::string lemma;
  Upos upos = Upos::X;
  std::optional<std::size_t> head;  // nullopt marks the root
  std::string deprel;
  std::string feats;  // raw CoNLL-U FEATS column, "_" when empty

  bool has_feature(std::string_view key_value) const;
};

struct DepSentence {
  std::string id;  // "# sent_id" when present
  std::vector<DepToken> tokens;

  std::size_t size() const { return tokens.size(); }
};

struct Article {
  std::string id;
  std::string outlet;
  Leaning leaning = Leaning::Unlabeled;
  Date published_at{};
  std::string title;
  std::string text;
  std::vector<DepSentence> sentences;

  QuarterKey quarter() const { return QuarterKey::of(published_at); }
};

std::string to_lower(std::string_view s);

}  // namespace polstance
