#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "polstance/cli.hpp"
#include "polstance/conllu.hpp"
#include "polstance/corpus.hpp"
#include "polstance/io.hpp"
#include "support.hpp"

using namespace polstance;
using namespace polstance::testing;
namespace fs = std::filesystem;

namespace {

struct Workspace {
  fs::path dir;

  Workspace() {
    dir = fs::temp_directory_path() / ("polstance_cli_" + std::to_string(std::rand()));
    fs::create_directories(dir);
    PlantedGenerator gen(21);
    const auto articles = gen.corpus(60);
    std::ostringstream corpus;
    write_corpus(corpus, articles);
    write_file_atomic(path("corpus.jsonl"), corpus.str());
    std::vector<ParsedDocument> docs;
    for (const auto& a : articles) docs.push_back({a.id, a.sentences});
    std::ostringstream conllu;
    write_conllu(conllu, docs);
    write_file_atomic(path("parses.conllu"), conllu.str());
    write_file_atomic(path("lexicon.tsv"), kPlantedLexicon);
  }
  ~Workspace() { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::size_t count_class(const std::string& jsonl, const std::string& leaning) {
  std::size_t n = 0;
  for (const auto& line : lines(jsonl)) {
    if (nlohmann::json::parse(line)["leaning"] == leaning) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("cli pipeline end to end") {
  Workspace ws;
  const auto corpus = ws.path("corpus.jsonl");
  const auto conllu = ws.path("parses.conllu");
  const auto lexicon = ws.path("lexicon.tsv");

  auto r = run({"stats", "--corpus", corpus, "--out", ws.path("stats.tsv")});
  REQUIRE(r.code == 0);
  const auto stats = lines(read_file(ws.path("stats.tsv")));
  CHECK(stats[0].rfind("# config_digest=", 0) == 0);
  CHECK(stats[1] == "leaning\toutlet\tquarter\tcount");
  CHECK(r.err.find("left: 60") != std::string::npos);

  r = run({"balance", "--corpus", corpus, "--cap", "40", "--seed", "1", "--out", ws.path("bal.jsonl")});
  REQUIRE(r.code == 0);
  const auto balanced = read_file(ws.path("bal.jsonl"));
  for (const char* l : {"left", "center", "right"}) CHECK(count_class(balanced, l) == 40);

  r = run({"split", "--corpus", ws.path("bal.jsonl"), "--train-fraction", "0.75", "--seed", "1",
           "--train-out", ws.path("train.jsonl"), "--test-out", ws.path("test.jsonl")});
  REQUIRE(r.code == 0);
  // Rounding happens per (leaning, quarter) stratum.
  const auto n_train = lines(read_file(ws.path("train.jsonl"))).size();
  CHECK(n_train + lines(read_file(ws.path("test.jsonl"))).size() == 120);
  CHECK(n_train >= 85);
  CHECK(n_train <= 95);

  const std::vector<std::string> train = {"train",   "--corpus",   corpus,  "--conllu", conllu,
                                          "--lexicon", lexicon,    "--cap", "40",       "--seed",
                                          "3",       "--test-out", ws.path("held.jsonl")};
  auto with_out = [](std::vector<std::string> a, const std::string& out) {
    a.push_back("--out");
    a.push_back(out);
    return a;
  };
  r = run(with_out(train, ws.path("model.json")));
  REQUIRE(r.code == 0);
  const auto model = nlohmann::json::parse(read_file(ws.path("model.json")));
  CHECK(model["version"] == 1);
  CHECK(model["coref"] == "baseline coref");
  const std::size_t n_held = model["test_articles"];
  CHECK(model["train_articles"].get<std::size_t>() + n_held == 120);

  REQUIRE(run(with_out(train, ws.path("model2.json"))).code == 0);
  CHECK(read_file(ws.path("model.json")) == read_file(ws.path("model2.json")));

  const std::vector<std::string> classify = {"classify", "--model",  ws.path("model.json"),
                                             "--conllu", conllu,     "--corpus",
                                             ws.path("held.jsonl"), "--lexicon", lexicon};
  r = run(with_out(classify, ws.path("preds.jsonl")));
  REQUIRE(r.code == 0);
  auto parallel = with_out(classify, ws.path("preds4.jsonl"));
  parallel.insert(parallel.end(), {"--jobs", "4"});
  REQUIRE(run(parallel).code == 0);
  auto explained = with_out(classify, ws.path("preds_x.jsonl"));
  explained.insert(explained.end(), {"--explain-out", ws.path("explain.jsonl"), "--top-k", "2"});
  REQUIRE(run(explained).code == 0);
  const auto preds = read_file(ws.path("preds.jsonl"));
  CHECK(preds == read_file(ws.path("preds4.jsonl")));
  CHECK(lines(preds).size() == n_held);
  CHECK(nlohmann::json::parse(lines(preds)[0]).contains("config_digest"));
  for (const auto& line : lines(read_file(ws.path("explain.jsonl")))) {
    CHECK(nlohmann::json::parse(line)["top"].size() <= 2);
  }

  r = run({"evaluate", "--predictions", ws.path("preds.jsonl"), "--corpus", ws.path("held.jsonl"),
           "--out", ws.path("metrics.json"), "--tsv", ws.path("metrics.tsv")});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("        Precision  Recall  F1-Score  Support\n", 0) == 0);
  const auto metrics = nlohmann::json::parse(read_file(ws.path("metrics.json")));
  for (const char* l : {"left", "center", "right"}) CHECK(metrics["classes"][l]["f1"] == 1.0);
  CHECK(read_file(ws.path("metrics.tsv")).rfind("# config_digest=", 0) == 0);

  r = run({"apply", "--corpus", corpus, "--model", ws.path("model.json"), "--conllu", conllu,
           "--lexicon", lexicon, "--per-outlet", "5", "--seed", "2", "--out", ws.path("dist.csv"),
           "--json", ws.path("dist.json")});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out)[1].rfind("Left    ", 0) == 0);
  const auto csv = lines(read_file(ws.path("dist.csv")));
  CHECK(csv[1] == "quarter,left,center,right,n");
  std::size_t total = 0;
  for (std::size_t i = 2; i < csv.size(); ++i) total += std::stoul(csv[i].substr(csv[i].rfind(',') + 1));
  CHECK(total == 30);  // 6 outlets, 5 each
  const auto dist = nlohmann::json::parse(read_file(ws.path("dist.json")));
  CHECK(dist["quarters"].size() == csv.size() - 2);

  // Reusing predictions limits the distribution to the classified articles.
  r = run({"apply", "--corpus", ws.path("held.jsonl"), "--predictions", ws.path("preds.jsonl")});
  REQUIRE(r.code == 0);
}

TEST_CASE("evaluate accepts predictions from another model") {
  Workspace ws;
  std::ostringstream corpus_out;
  PlantedGenerator gen(4);
  const auto articles = gen.corpus(1);
  write_corpus(corpus_out, articles);
  write_file_atomic(ws.path("gold.jsonl"), corpus_out.str());
  std::ostringstream preds;
  for (const auto& a : articles) {
    preds << R"({"article_id":")" << a.id << R"(","model":"conv","predicted":")"
          << to_string(a.leaning)
          << R"(","probabilities":{"left":0.34,"center":0.33,"right":0.33},"tie_flag":false})"
          << '\n';
  }
  write_file_atomic(ws.path("conv.jsonl"), preds.str());
  const auto r = run({"evaluate", "--predictions", ws.path("conv.jsonl"), "--corpus", ws.path("gold.jsonl")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("Left    1.0        1.0     1.0       1") != std::string::npos);
}

TEST_CASE("config file values yield to command-line flags") {
  Workspace ws;
  write_file_atomic(ws.path("run.cfg"), "# balance settings\ncap = 10\nseed = 1\n");
  auto r = run({"balance", "--config", ws.path("run.cfg"), "--corpus", ws.path("corpus.jsonl")});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).size() == 30);
  r = run({"balance", "--config", ws.path("run.cfg"), "--corpus", ws.path("corpus.jsonl"), "--cap", "20"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out).size() == 60);

  // stats has no --cap.
  CHECK(run({"stats", "--config", ws.path("run.cfg"), "--corpus", ws.path("corpus.jsonl")}).code == 2);

  // Same settings through the file or flags give the same output and digest.
  write_file_atomic(ws.path("stats.cfg"), "window = 2021-01-01:2021-12-31\n");
  REQUIRE(run({"stats", "--config", ws.path("stats.cfg"), "--corpus", ws.path("corpus.jsonl"),
               "--out", ws.path("a.tsv")}).code == 0);
  REQUIRE(run({"stats", "--window", "2021-01-01:2021-12-31", "--corpus", ws.path("corpus.jsonl"),
               "--out", ws.path("b.tsv"), "--jobs", "3"}).code == 0);
  CHECK(read_file(ws.path("a.tsv")) == read_file(ws.path("b.tsv")));
  CHECK(read_file(ws.path("a.tsv")).find("\t22Q") == std::string::npos);
}

TEST_CASE("cli errors are one JSON line with a nonzero exit") {
  Workspace ws;
  auto r = run({"stats", "--corpus", ws.path("absent.jsonl")});
  CHECK(r.code == 1);
  const auto err = nlohmann::json::parse(r.err);
  CHECK(err["error"]["kind"] == "missing_input");
  CHECK(err["error"]["message"].get<std::string>().find("absent.jsonl") != std::string::npos);

  r = run({"balance", "--corpus", ws.path("corpus.jsonl"), "--cap", "zero"});
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.err)["error"]["kind"] == "config");

  write_file_atomic(ws.path("broken.jsonl"), "{\"id\":\"a\",\"leaning\":\"left\"\n");
  r = run({"stats", "--corpus", ws.path("broken.jsonl")});
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.err)["error"]["message"].get<std::string>().find("line 1") !=
        std::string::npos);

  r = run({"split", "--corpus", ws.path("corpus.jsonl"), "--train-fraction", "1.5",
           "--train-out", ws.path("a"), "--test-out", ws.path("b")});
  CHECK(r.code == 2);
}

TEST_CASE("the installed binary reports errors") {
  Workspace ws;
  const std::string cmd = std::string(POLSTANCE_CLI_PATH) + " stats --corpus " +
                          ws.path("absent.jsonl") + " 2> " + ws.path("err.txt");
  const int status = std::system(cmd.c_str());
  CHECK(status != 0);
  CHECK(nlohmann::json::parse(read_file(ws.path("err.txt")))["error"]["kind"] == "missing_input");
}

TEST_CASE("refres-eval on the bundled gold sentences") {
  Workspace ws;
  const auto r = run({"refres-eval", "--conllu", POLSTANCE_SOURCE_DIR "/data/refres_gold.conllu",
                      "--gold", POLSTANCE_SOURCE_DIR "/data/refres_gold.jsonl", "--out",
                      ws.path("refres.json")});
  REQUIRE(r.code == 0);
  CHECK(r.out == "adjective\tP=0.91\tR=0.91\tF1=0.91\nverb\tP=0.8\tR=0.8\tF1=0.8\n");
  // Hand count: "praised" and "expect" attach to their subjects instead of
  // their objects, "reckless" ties between subject and object.
  const auto j = nlohmann::json::parse(read_file(ws.path("refres.json")));
  CHECK(j["sentences"] == 12);
  CHECK(j["verb"]["tp"] == 8);
  CHECK(j["verb"]["fp"] == 2);
  CHECK(j["verb"]["fn"] == 2);
  CHECK(j["adjective"]["tp"] == 10);
  CHECK(j["adjective"]["fn"] == 1);

  write_file_atomic(ws.path("bad_gold.jsonl"),
                    R"({"sentence_id":"s01","source_index":40,"noun_index":0,"kind":"verb"})" "\n");
  const auto bad = run({"refres-eval", "--conllu", POLSTANCE_SOURCE_DIR "/data/refres_gold.conllu",
                        "--gold", ws.path("bad_gold.jsonl")});
  CHECK(bad.code == 1);
  CHECK(nlohmann::json::parse(bad.err)["error"]["kind"] == "invariant");
}
