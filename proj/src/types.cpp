#include "polstance/types.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>

#include "polstance/error.hpp"

namespace polstance {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::io: return "io";
    case ErrorKind::parse: return "parse";
    case ErrorKind::duplicate_id: return "duplicate_id";
    case ErrorKind::invariant: return "invariant";
    case ErrorKind::malformed_tree: return "malformed_tree";
    case ErrorKind::out_of_range: return "out_of_range";
    case ErrorKind::version_mismatch: return "version_mismatch";
    case ErrorKind::unclassifiable: return "unclassifiable";
    case ErrorKind::missing_input: return "missing_input";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view to_string(Leaning l) {
  switch (l) {
    case Leaning::Left: return "left";
    case Leaning::Center: return "center";
    case Leaning::Right: return "right";
    case Leaning::Unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

Leaning parse_leaning(std::string_view s) {
  const std::string lower = to_lower(s);
  if (lower == "left") return Leaning::Left;
  if (lower == "center") return Leaning::Center;
  if (lower == "right") return Leaning::Right;
  return Leaning::Unlabeled;
}

namespace {

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::optional<Date> parse_date(std::string_view s) {
  if (s.size() > 10 && s[10] != 'T' && s[10] != ' ') return std::nullopt;
  if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_int(s.substr(0, 4), y) || !parse_int(s.substr(5, 2), m) ||
      !parse_int(s.substr(8, 2), d)) {
    return std::nullopt;
  }
  Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
            std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

QuarterKey QuarterKey::of(const Date& d) {
  const auto month = static_cast<int>(static_cast<unsigned>(d.month()));
  return {static_cast<int>(d.year()), (month - 1) / 3 + 1};
}

std::string QuarterKey::label() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02dQ%d", ((year % 100) + 100) % 100, quarter);
  return buf;
}

DateWindow DateWindow::parse(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorKind::config, "window must look like YYYY-MM-DD:YYYY-MM-DD, got '" +
                                       std::string(s) + "'");
  }
  auto first = parse_date(s.substr(0, colon));
  auto last = parse_date(s.substr(colon + 1));
  if (!first || !last || *last < *first) {
    throw Error(ErrorKind::config, "invalid window '" + std::string(s) + "'");
  }
  return {*first, *last};
}

namespace {

constexpr std::array<std::pair<std::string_view, Upos>, 17> kUposNames = {{
    {"ADJ", Upos::ADJ},     {"ADP", Upos::ADP},     {"ADV", Upos::ADV},
    {"AUX", Upos::AUX},     {"CCONJ", Upos::CCONJ}, {"DET", Upos::DET},
    {"INTJ", Upos::INTJ},   {"NOUN", Upos::NOUN},   {"NUM", Upos::NUM},
    {"PART", Upos::PART},   {"PRON", Upos::PRON},   {"PROPN", Upos::PROPN},
    {"PUNCT", Upos::PUNCT}, {"SCONJ", Upos::SCONJ}, {"SYM", Upos::SYM},
    {"VERB", Upos::VERB},   {"X", Upos::X},
}};

}  // namespace

Upos parse_upos(std::string_view s) {
  for (const auto& [name, tag] : kUposNames) {
    if (name == s) return tag;
  }
  // spaCy's pre-UD2 tag
  if (s == "CONJ") return Upos::CCONJ;
  return Upos::X;
}

std::string_view to_string(Upos u) {
  for (const auto& [name, tag] : kUposNames) {
    if (tag == u) return name;
  }
  return "X";
}

bool DepToken::has_feature(std::string_view key_value) const {
  std::string_view rest = feats;
  while (!rest.empty()) {
    const auto bar = rest.find('|');
    if (rest.substr(0, bar) == key_value) return true;
    if (bar == std::string_view::npos) break;
    rest.remove_prefix(bar + 1);
  }
  return false;
}

}  // namespace polstance
