#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <unordered_map>
#include <vector>

#include "polstance/types.hpp"

namespace polstance {

/// Rewrites one pronoun token to its antecedent.
struct Substitution {
  std::size_t sentence_index = 0;
  std::size_t token_index = 0;
  std::string replacement_lemma;
  Upos replacement_pos = Upos::PROPN;

  bool operator==(const Substitution&) const = default;
};

using SubstitutionTable = std::unordered_map<std::string, std::vector<Substitution>>;

/// JSONL rows {article_id, sentence_index, token_index, replacement_lemma,
/// replacement_pos}, grouped by article id in file order.
SubstitutionTable parse_substitutions(std::istream& in);
SubstitutionTable load_substitutions(const std::filesystem::path& path);
void write_substitutions(std::ostream& out, const std::string& article_id,
                         const std::vector<Substitution>& subs);

/// Replaces lemma and UPOS of each addressed token. The tree, surface forms
/// and every other token stay as they were.
Article apply_substitutions(Article article, const std::vector<Substitution>& subs);

/// Baseline resolver: each third-person personal pronoun is mapped to the
/// nearest preceding PROPN in its own sentence or the `window` sentences
/// before it. No gender or number agreement.
std::vector<Substitution> heuristic_resolve(const Article& article, std::size_t window = 2);

bool is_personal_pronoun(const DepToken& tok);

}  // namespace polstance
