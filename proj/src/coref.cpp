#include "polstance/coref.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <ostream>

#include "json.hpp"
#include "polstance/error.hpp"

namespace polstance {

using json = nlohmann::json;

namespace {

constexpr std::array<std::string_view, 13> kThirdPersonLemmas = {
    "he", "she", "him", "her", "his", "hers", "they", "them", "their", "theirs",
    "himself", "herself", "themselves"};

}  // namespace

bool is_personal_pronoun(const DepToken& tok) {
  if (tok.upos != Upos::PRON) return false;
  if (tok.has_feature("PronType=Prs")) {
    return !tok.has_feature("Person=1") && !tok.has_feature("Person=2");
  }
  const auto lemma = to_lower(tok.lemma);
  const auto surface = to_lower(tok.surface);
  return std::find(kThirdPersonLemmas.begin(), kThirdPersonLemmas.end(), lemma) !=
             kThirdPersonLemmas.end() ||
         std::find(kThirdPersonLemmas.begin(), kThirdPersonLemmas.end(), surface) !=
             kThirdPersonLemmas.end();
}

SubstitutionTable parse_substitutions(std::istream& in) {
  SubstitutionTable table;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto obj = json::parse(line);
      Substitution sub;
      sub.sentence_index = obj.at("sentence_index").get<std::size_t>();
      sub.token_index = obj.at("token_index").get<std::size_t>();
      sub.replacement_lemma = obj.at("replacement_lemma").get<std::string>();
      sub.replacement_pos = parse_upos(obj.at("replacement_pos").get<std::string>());
      if (!is_nominal(sub.replacement_pos)) {
        throw Error(ErrorKind::parse, "substitutions line " + std::to_string(line_no) +
                                          ": replacement_pos must be NOUN or PROPN");
      }
      table[obj.at("article_id").get<std::string>()].push_back(std::move(sub));
    } catch (const json::exception& e) {
      throw Error(ErrorKind::parse,
                  "substitutions line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

SubstitutionTable load_substitutions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::missing_input, "cannot open substitutions " + path.string());
  return parse_substitutions(in);
}

void write_substitutions(std::ostream& out, const std::string& article_id,
                         const std::vector<Substitution>& subs) {
  for (const auto& s : subs) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    obj["article_id"] = article_id;
    obj["sentence_index"] = s.sentence_index;
    obj["token_index"] = s.token_index;
    obj["replacement_lemma"] = s.replacement_lemma;
    obj["replacement_pos"] = to_string(s.replacement_pos);
    out << obj.dump() << '\n';
  }
}

Article apply_substitutions(Article article, const std::vector<Substitution>& subs) {
  for (const auto& s : subs) {
    if (s.sentence_index >= article.sentences.size()) {
      throw Error(ErrorKind::out_of_range,
                  "article '" + article.id + "': substitution sentence " +
                      std::to_string(s.sentence_index) + " out of range (" +
                      std::to_string(article.sentences.size()) + " sentences)");
    }
    auto& sentence = article.sentences[s.sentence_index];
    if (s.token_index >= sentence.size()) {
      throw Error(ErrorKind::out_of_range,
                  "article '" + article.id + "': substitution token " +
                      std::to_string(s.token_index) + " out of range in sentence " +
                      std::to_string(s.sentence_index) + " (" +
                      std::to_string(sentence.size()) + " tokens)");
    }
    if (!is_nominal(s.replacement_pos)) {
      throw Error(ErrorKind::invariant, "article '" + article.id +
                                            "': substitution replacement must be nominal");
    }
    auto& tok = sentence.tokens[s.token_index];
    tok.lemma = s.replacement_lemma;
    tok.upos = s.replacement_pos;
  }
  return article;
}

std::vector<Substitution> heuristic_resolve(const Article& article, std::size_t window) {
  std::vector<Substitution> out;
  const auto& sentences = article.sentences;
  for (std::size_t si = 0; si < sentences.size(); ++si) {
    const std::size_t first = si >= window ? si - window : 0;
    for (const auto& tok : sentences[si].tokens) {
      if (!is_personal_pronoun(tok)) continue;

      const DepToken* antecedent = nullptr;
      // Scan backwards: earlier tokens of this sentence, then previous sentences.
      for (std::size_t s = si + 1; s-- > first && !antecedent;) {
        const auto& toks = sentences[s].tokens;
        std::size_t end = (s == si) ? tok.index : toks.size();
        while (end-- > 0) {
          if (toks[end].upos == Upos::PROPN) {
            antecedent = &toks[end];
            break;
          }
        }
      }
      if (!antecedent) continue;
      out.push_back({si, tok.index, antecedent->lemma, Upos::PROPN});
    }
  }
  return out;
}

}  // namespace polstance
