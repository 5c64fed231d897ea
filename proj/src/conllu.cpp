#include "polstance/conllu.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <unordered_map>

#include "polstance/error.hpp"

namespace polstance {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  while (true) {
    const auto tab = line.find('\t');
    cols.push_back(line.substr(0, tab));
    if (tab == std::string_view::npos) break;
    line.remove_prefix(tab + 1);
  }
  return cols;
}

bool parse_size(std::string_view s, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// "# key = value" -> value, if the comment carries that key.
bool comment_value(std::string_view line, std::string_view key, std::string& value) {
  line.remove_prefix(1);
  line = trim(line);
  if (line.substr(0, key.size()) != key) return false;
  line.remove_prefix(key.size());
  line = trim(line);
  if (line.empty() || line.front() != '=') return false;
  value = std::string(trim(line.substr(1)));
  return true;
}

class Reader {
public:
  std::vector<ParsedDocument> docs;

  void comment(std::string_view line) {
    std::string value;
    if (comment_value(line, "article_id", value) || comment_value(line, "newdoc id", value)) {
      // Repeating the id on every sentence continues the same document.
      if (docs.empty() || docs.back().article_id != value) docs.push_back({value, {}});
    } else if (comment_value(line, "sent_id", value)) {
      sent_id_ = value;
    }
  }

  void token(std::string_view line, std::size_t line_no) {
    auto cols = split_tabs(line);
    if (cols.size() != 10) {
      fail(line_no, "expected 10 tab-separated columns, got " + std::to_string(cols.size()));
    }
    if (cols[0].find_first_of("-.") != std::string_view::npos) return;

    std::size_t id = 0, head = 0;
    if (!parse_size(cols[0], id) || id != current_.tokens.size() + 1) {
      fail(line_no, "token ids must run 1..n without gaps, got '" + std::string(cols[0]) + "'");
    }
    if (!parse_size(cols[6], head)) {
      fail(line_no, "non-numeric HEAD '" + std::string(cols[6]) + "'");
    }
    DepToken tok;
    tok.index = id - 1;
    tok.surface = cols[1];
    tok.lemma = cols[2] == "_" ? std::string(cols[1]) : std::string(cols[2]);
    tok.upos = parse_upos(cols[3]);
    if (head > 0) tok.head = head - 1;
    tok.deprel = cols[7];
    tok.feats = cols[5];
    current_.tokens.push_back(std::move(tok));
    last_line_ = line_no;
  }

  void end_sentence() {
    if (current_.tokens.empty()) {
      sent_id_.clear();
      return;
    }
    for (const auto& tok : current_.tokens) {
      if (tok.head && *tok.head >= current_.tokens.size()) {
        fail(last_line_, "HEAD of token " + std::to_string(tok.index + 1) + " is out of range");
      }
    }
    if (docs.empty()) docs.push_back({"", {}});
    auto& doc = docs.back();
    if (sent_id_.empty()) {
      sent_id_ = doc.article_id.empty()
                     ? std::to_string(++anonymous_)
                     : doc.article_id + ":" + std::to_string(doc.sentences.size());
    }
    current_.id = std::move(sent_id_);
    doc.sentences.push_back(std::move(current_));
    current_ = {};
    sent_id_.clear();
  }

private:
  [[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw Error(ErrorKind::parse, "conllu line " + std::to_string(line_no) + ": " + what);
  }

  DepSentence current_;
  std::string sent_id_;
  std::size_t anonymous_ = 0;
  std::size_t last_line_ = 0;
};

}  // namespace

std::vector<ParsedDocument> parse_conllu(std::istream& in) {
  Reader reader;
  std::string raw;
  for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) {
      reader.end_sentence();
    } else if (line.front() == '#') {
      reader.comment(line);
    } else {
      reader.token(line, line_no);
    }
  }
  reader.end_sentence();
  return std::move(reader.docs);
}

std::vector<ParsedDocument> load_conllu(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::missing_input, "cannot open CoNLL-U file " + path.string());
  return parse_conllu(in);
}

void write_conllu(std::ostream& out, const std::vector<ParsedDocument>& docs) {
  for (const auto& doc : docs) {
    if (!doc.article_id.empty()) out << "# article_id = " << doc.article_id << '\n';
    for (const auto& s : doc.sentences) {
      if (!s.id.empty()) out << "# sent_id = " << s.id << '\n';
      for (const auto& t : s.tokens) {
        out << t.index + 1 << '\t' << t.surface << '\t' << t.lemma << '\t' << to_string(t.upos)
            << "\t_\t" << (t.feats.empty() ? "_" : t.feats) << '\t'
            << (t.head ? *t.head + 1 : 0) << '\t' << (t.deprel.empty() ? "_" : t.deprel)
            << "\t_\t_\n";
      }
      out << '\n';
    }
  }
}

std::size_t attach_parses(std::vector<Article>& corpus, const std::vector<ParsedDocument>& docs) {
  std::unordered_map<std::string, const ParsedDocument*> by_id;
  for (const auto& doc : docs) by_id.emplace(doc.article_id, &doc);
  std::size_t attached = 0;
  for (auto& a : corpus) {
    auto it = by_id.find(a.id);
    if (it == by_id.end()) continue;
    a.sentences = it->second->sentences;
    ++attached;
  }
  return attached;
}

std::vector<Article> articles_from_parses(const std::vector<ParsedDocument>& docs) {
  std::vector<Article> out;
  out.reserve(docs.size());
  for (const auto& doc : docs) {
    Article a;
    a.id = doc.article_id;
    a.sentences = doc.sentences;
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace polstance
