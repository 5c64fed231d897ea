#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "polstance/types.hpp"

namespace polstance {

/// Sentences grouped under one "# article_id = ..." comment. Sentences seen
/// before any such comment land in a document with an empty id.
struct ParsedDocument {
  std::string article_id;
  std::vector<DepSentence> sentences;
};

/// Reads 10-column CoNLL-U. Multiword ranges (1-2) and empty nodes (1.1) are
/// skipped. Sentence ids come from "# sent_id = ..." or default to
/// "<article_id>:<k>" (k 0-based within the article).
std::vector<ParsedDocument> parse_conllu(std::istream& in);
std::vector<ParsedDocument> load_conllu(const std::filesystem::path& path);

void write_conllu(std::ostream& out, const std::vector<ParsedDocument>& docs);

/// Attaches parsed sentences to corpus articles by id. Returns the number of
/// articles that received sentences. Documents with unknown ids are ignored.
std::size_t attach_parses(std::vector<Article>& corpus, const std::vector<ParsedDocument>& docs);

/// Unlabeled articles built from the parse alone (no outlet or date).
std::vector<Article> articles_from_parses(const std::vector<ParsedDocument>& docs);

}  // namespace polstance
