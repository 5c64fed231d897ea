#include "polstance/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include "polstance/error.hpp"

namespace polstance {

using ojson = nlohmann::ordered_json;

namespace {

std::string capitalized(Leaning l) {
  std::string s(to_string(l));
  if (!s.empty()) s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string list_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < 20; ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  if (ids.size() > 20) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

}  // namespace

ClassMetrics score(std::span<const Prediction> predictions, std::span<const GoldLabel> gold,
                   bool strict) {
  std::unordered_map<std::string, const Prediction*> by_id;
  for (const auto& p : predictions) {
    if (!by_id.emplace(p.article_id, &p).second) {
      throw Error(ErrorKind::duplicate_id, "duplicate prediction for '" + p.article_id + "'");
    }
  }

  std::vector<std::string> missing;
  std::array<std::size_t, 3> tp{}, fp{}, fn{};
  ClassMetrics m;
  m.strict = strict;
  for (const auto& [id, truth] : gold) {
    if (truth == Leaning::Unlabeled) continue;
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      missing.push_back(id);
      continue;
    }
    ++m.total;
    const auto t = leaning_slot(truth);
    const auto& predicted = it->second->predicted;
    if (!predicted) {
      ++m.unclassifiable_count;
      ++m.classes[t].unclassifiable;
      if (!strict) ++fn[t];
      continue;
    }
    ++m.classes[t].support;
    const auto p = leaning_slot(*predicted);
    if (p == t) {
      ++tp[t];
    } else {
      ++fp[p];
      ++fn[t];
    }
  }
  if (!missing.empty()) {
    throw Error(ErrorKind::missing_input, "no prediction for: " + list_ids(missing));
  }
  for (std::size_t c = 0; c < 3; ++c) m.classes[c].prf = prf_from_counts(tp[c], fp[c], fn[c]);
  return m;
}

std::vector<GoldLabel> gold_labels(std::span<const Article> corpus) {
  std::vector<GoldLabel> out;
  for (const auto& a : corpus) {
    if (a.leaning != Leaning::Unlabeled) out.emplace_back(a.id, a.leaning);
  }
  return out;
}

std::string format_fraction(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  while (s.size() > 3 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  return s;
}

void write_metrics_table(std::ostream& out, const ClassMetrics& m) {
  out << std::left << std::setw(8) << "" << std::setw(11) << "Precision" << std::setw(8)
      << "Recall" << std::setw(10) << "F1-Score" << "Support\n";
  for (Leaning l : kLeanings) {
    const auto& c = m[l];
    out << std::setw(8) << capitalized(l) << std::setw(11) << format_fraction(c.prf.precision)
        << std::setw(8) << format_fraction(c.prf.recall) << std::setw(10)
        << format_fraction(c.prf.f1) << c.support << '\n';
  }
  out << "Unclassifiable: " << m.unclassifiable_count << " of " << m.total
      << (m.strict ? " (excluded)" : " (counted as misses)") << '\n';
}

void write_metrics_tsv(std::ostream& out, const ClassMetrics& m) {
  out << "class\tprecision\trecall\tf1\tsupport\tunclassifiable\n";
  for (Leaning l : kLeanings) {
    const auto& c = m[l];
    out << to_string(l) << '\t' << format_fraction(c.prf.precision) << '\t'
        << format_fraction(c.prf.recall) << '\t' << format_fraction(c.prf.f1) << '\t'
        << c.support << '\t' << c.unclassifiable << '\n';
  }
}

ojson to_json(const ClassMetrics& m) {
  ojson j = ojson::object();
  ojson classes = ojson::object();
  for (Leaning l : kLeanings) {
    const auto& c = m[l];
    classes[std::string(to_string(l))] = {
        {"precision", c.prf.precision}, {"recall", c.prf.recall}, {"f1", c.prf.f1},
        {"support", c.support},         {"tp", c.prf.tp},         {"fp", c.prf.fp},
        {"fn", c.prf.fn},               {"unclassifiable", c.unclassifiable}};
  }
  j["classes"] = std::move(classes);
  j["unclassifiable_count"] = m.unclassifiable_count;
  j["total"] = m.total;
  j["strict"] = m.strict;
  return j;
}

double QuarterRow::fraction(Leaning l) const {
  const auto n = classified();
  return n == 0 ? 0.0 : static_cast<double>(counts.at(leaning_slot(l))) / static_cast<double>(n);
}

QuarterDistribution temporal_apply(std::span<const Prediction> predictions,
                                   std::span<const Article> articles) {
  std::unordered_map<std::string, const Article*> by_id;
  for (const auto& a : articles) by_id.emplace(a.id, &a);

  QuarterDistribution d;
  std::vector<std::string> missing;
  for (const auto& p : predictions) {
    auto it = by_id.find(p.article_id);
    if (it == by_id.end()) {
      missing.push_back(p.article_id);
      continue;
    }
    auto& row = d[it->second->quarter()];
    if (p.predicted) {
      ++row.counts[leaning_slot(*p.predicted)];
    } else {
      ++row.unclassifiable;
    }
  }
  if (!missing.empty()) {
    throw Error(ErrorKind::missing_input, "predictions without a dated article: " +
                                              list_ids(missing));
  }
  return d;
}

int shade_band(double fraction) {
  return std::clamp(static_cast<int>(std::floor(fraction * 5.0)), 0, 4);
}

void write_distribution_csv(std::ostream& out, const QuarterDistribution& d) {
  out << "quarter,left,center,right,n\n";
  for (const auto& [q, row] : d) {
    out << q.label();
    for (Leaning l : kLeanings) out << ',' << format_fraction(row.fraction(l));
    out << ',' << row.n() << '\n';
  }
}

void write_distribution_table(std::ostream& out, const QuarterDistribution& d) {
  constexpr int kCell = 10;
  auto emit = [&out](const std::ostringstream& line) {
    std::string s = line.str();
    s.erase(s.find_last_not_of(' ') + 1);
    out << s << '\n';
  };
  std::ostringstream header;
  header << std::left << std::setw(8) << "";
  for (const auto& [q, row] : d) header << std::setw(kCell) << q.label();
  emit(header);
  for (Leaning l : kLeanings) {
    std::ostringstream line;
    line << std::left << std::setw(8) << capitalized(l);
    for (const auto& [q, row] : d) {
      const double f = row.fraction(l);
      line << std::setw(kCell) << (format_fraction(f) + " [" + std::to_string(shade_band(f)) + "]");
    }
    emit(line);
  }
  std::ostringstream totals;
  totals << std::left << std::setw(8) << "n";
  for (const auto& [q, row] : d) totals << std::setw(kCell) << row.n();
  emit(totals);
  std::size_t unclassifiable = 0;
  for (const auto& [q, row] : d) unclassifiable += row.unclassifiable;
  if (unclassifiable > 0) out << "Unclassifiable: " << unclassifiable << '\n';
}

ojson to_json(const QuarterDistribution& d) {
  ojson j = ojson::array();
  for (const auto& [q, row] : d) {
    ojson r = ojson::object();
    r["quarter"] = q.label();
    for (Leaning l : kLeanings) r[std::string(to_string(l))] = row.fraction(l);
    r["n"] = row.n();
    r["unclassifiable"] = row.unclassifiable;
    j.push_back(std::move(r));
  }
  return j;
}

}  // namespace polstance
