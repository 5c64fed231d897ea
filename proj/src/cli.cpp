#include "polstance/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_set>

#include "CLI11.hpp"
#include "json.hpp"
#include "polstance/conllu.hpp"
#include "polstance/error.hpp"
#include "polstance/evaluation.hpp"
#include "polstance/io.hpp"
#include "polstance/pipeline.hpp"
#include "polstance/random.hpp"
#include "polstance/refres.hpp"

#ifndef POLSTANCE_DEFAULT_LEXICON
#define POLSTANCE_DEFAULT_LEXICON "data/valence_lexicon.tsv"
#endif

namespace polstance {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct Options {
  std::string corpus, conllu, substitutions, lexicon = POLSTANCE_DEFAULT_LEXICON, model,
                                             predictions, gold, out, train_out, test_out, tsv,
                                             window, config, explain_out;
  std::uint64_t seed = 0;
  std::size_t cap = 10000;
  double train_fraction = 0.8;
  std::size_t min_mentions = 1;
  std::size_t jobs = 1;
  std::size_t per_outlet = 0;
  std::size_t top_k = 5;
  bool strict = false;
};

/// "key = value" lines; '#' starts a comment line.
std::vector<std::string> config_args(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::missing_input, "cannot open config " + path.string());
  std::vector<std::string> args;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::config, "config line " + std::to_string(line_no) +
                                         ": expected key = value");
    }
    auto trim = [](std::string s) {
      const auto first = s.find_first_not_of(" \t\r");
      if (first == std::string::npos) return std::string();
      return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    args.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
  }
  return args;
}

/// Splices config-file flags in right after the subcommand so command-line
/// flags, parsed later, win.
std::vector<std::string> with_config(std::vector<std::string> args) {
  std::string config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config = args[i].substr(9);
  }
  if (config.empty()) return args;
  auto sub = std::find_if(args.begin(), args.end(),
                          [](const std::string& a) { return !a.empty() && a[0] != '-'; });
  if (sub == args.end()) return args;
  const auto extra = config_args(config);
  args.insert(sub + 1, extra.begin(), extra.end());
  return args;
}

void require_file(const std::string& path, const char* what) {
  if (path.empty()) throw Error(ErrorKind::missing_input, std::string("missing --") + what);
  if (!fs::exists(path)) {
    throw Error(ErrorKind::missing_input, std::string(what) + " not found: " + path);
  }
}

class Runner {
public:
  Runner(Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  void set_config(RunConfig config) { config_ = std::move(config); }

  void stats() {
    require_file(o_.corpus, "corpus");
    const auto s = polstance::stats(load());
    std::ostringstream ss;
    ss << "# config_digest=" << config_.digest() << '\n';
    s.write_tsv(ss);
    emit(o_.out, ss.str());
    if (!o_.out.empty()) {
      for (const auto& [l, n] : s.by_leaning()) err_ << to_string(l) << ": " << n << '\n';
    }
  }

  void balance() {
    require_file(o_.corpus, "corpus");
    std::ostringstream ss;
    write_corpus(ss, polstance::balance(load(), o_.cap, o_.seed));
    emit(o_.out, ss.str());
  }

  void split() {
    require_file(o_.corpus, "corpus");
    if (o_.train_out.empty() || o_.test_out.empty()) {
      throw Error(ErrorKind::missing_input, "split needs --train-out and --test-out");
    }
    const auto parts = polstance::split(load(), o_.train_fraction, o_.seed);
    std::ostringstream train, test;
    write_corpus(train, parts.train);
    write_corpus(test, parts.test);
    write_file_atomic(o_.train_out, train.str());
    write_file_atomic(o_.test_out, test.str());
    err_ << "train: " << parts.train.size() << ", test: " << parts.test.size() << '\n';
  }

  void train() {
    require_file(o_.corpus, "corpus");
    require_file(o_.conllu, "conllu");
    require_file(o_.lexicon, "lexicon");
    if (o_.out.empty()) throw Error(ErrorKind::missing_input, "missing --out");
    auto corpus = load();
    attach_parses(corpus, load_conllu(o_.conllu));
    const auto lexicon = load_lexicon(o_.lexicon);
    std::optional<SubstitutionTable> subs;
    if (!o_.substitutions.empty()) {
      require_file(o_.substitutions, "substitutions");
      subs = load_substitutions(o_.substitutions);
    }

    TrainOptions options;
    options.cap = o_.cap;
    options.train_fraction = o_.train_fraction;
    options.seed = o_.seed;
    options.min_mentions = o_.min_mentions;
    options.jobs = o_.jobs;
    options.substitutions = subs ? &*subs : nullptr;
    const auto result = polstance::train(corpus, lexicon, options);

    ojson provenance = ojson::object();
    provenance["config_digest"] = config_.digest();
    provenance["coref"] = std::string(to_string(result.coref)) + " coref";
    provenance["train_articles"] = result.split.train.size();
    provenance["test_articles"] = result.split.test.size();
    save_space(o_.out, result.space, provenance);
    if (!o_.test_out.empty()) {
      std::ostringstream ss;
      write_corpus(ss, result.split.test);
      write_file_atomic(o_.test_out, ss.str());
    }
    err_ << "model: " << result.space.dimension() << " nouns from "
         << result.split.train.size() << " training articles (" << to_string(result.coref)
         << " coref)\n";
  }

  void classify() {
    const auto predictions = predict();
    std::ostringstream ss;
    for (const auto& p : predictions) {
      auto j = to_json(p);
      j["config_digest"] = config_.digest();
      ss << j.dump() << '\n';
    }
    emit(o_.out, ss.str());
  }

  void evaluate() {
    require_file(o_.predictions, "predictions");
    require_file(o_.corpus, "corpus");
    const auto predictions = load_predictions(o_.predictions);
    const auto corpus = load();
    const auto gold = gold_labels(corpus);
    const auto m = score(predictions, gold, o_.strict);

    write_metrics_table(out_, m);
    if (!o_.out.empty()) {
      auto j = to_json(m);
      j["config_digest"] = config_.digest();
      write_file_atomic(o_.out, j.dump(2) + "\n");
    }
    if (!o_.tsv.empty()) {
      std::ostringstream ss;
      ss << "# config_digest=" << config_.digest() << '\n';
      write_metrics_tsv(ss, m);
      write_file_atomic(o_.tsv, ss.str());
    }
  }

  void apply() {
    require_file(o_.corpus, "corpus");
    auto articles = load();
    if (o_.per_outlet > 0) articles = sample_per_outlet(std::move(articles));

    std::vector<Prediction> predictions;
    if (!o_.predictions.empty()) {
      require_file(o_.predictions, "predictions");
      std::unordered_set<std::string> keep;
      for (const auto& a : articles) keep.insert(a.id);
      for (auto& p : load_predictions(o_.predictions)) {
        if (keep.count(p.article_id)) predictions.push_back(std::move(p));
      }
    } else {
      predictions = predict(&articles);
    }

    const auto d = temporal_apply(predictions, articles);
    write_distribution_table(out_, d);
    std::ostringstream ss;
    ss << "# config_digest=" << config_.digest() << '\n';
    write_distribution_csv(ss, d);
    if (!o_.out.empty()) write_file_atomic(o_.out, ss.str());
    if (!o_.tsv.empty()) {
      ojson j = ojson::object();
      j["config_digest"] = config_.digest();
      j["quarters"] = to_json(d);
      write_file_atomic(o_.tsv, j.dump(2) + "\n");
    }
  }

  void refres_eval() {
    require_file(o_.conllu, "conllu");
    require_file(o_.gold, "gold");
    std::vector<DepSentence> sentences;
    for (auto& doc : load_conllu(o_.conllu)) {
      for (auto& s : doc.sentences) sentences.push_back(std::move(s));
    }
    const auto gold = load_gold(o_.gold);
    for (const auto& g : gold) {
      auto it = std::find_if(sentences.begin(), sentences.end(),
                             [&](const DepSentence& s) { return s.id == g.sentence_id; });
      if (it == sentences.end() || g.source_index >= it->size() ||
          g.noun_index >= it->size()) {
        throw Error(ErrorKind::invariant, "gold relation on sentence '" + g.sentence_id +
                                              "' does not address existing tokens");
      }
    }
    const auto scores = eval_refres(predict_relations(sentences), gold);

    ojson j = ojson::object();
    j["config_digest"] = config_.digest();
    j["sentences"] = sentences.size();
    j["gold_relations"] = gold.size();
    for (auto [name, prf] : {std::pair{"adjective", scores.adjective}, std::pair{"verb", scores.verb}}) {
      j[name] = {{"precision", prf.precision}, {"recall", prf.recall}, {"f1", prf.f1},
                 {"tp", prf.tp},               {"fp", prf.fp},         {"fn", prf.fn}};
      out_ << name << "\tP=" << format_fraction(prf.precision)
           << "\tR=" << format_fraction(prf.recall) << "\tF1=" << format_fraction(prf.f1) << '\n';
    }
    if (!o_.out.empty()) write_file_atomic(o_.out, j.dump(2) + "\n");
  }

private:
  std::vector<Article> load() {
    std::optional<DateWindow> window;
    if (!o_.window.empty()) window = DateWindow::parse(o_.window);
    std::size_t dropped = 0;
    auto corpus = load_corpus(o_.corpus, window, &dropped);
    if (dropped) err_ << "dropped " << dropped << " articles outside " << o_.window << '\n';
    return corpus;
  }

  std::vector<Article> sample_per_outlet(std::vector<Article> articles) {
    std::map<std::string, std::vector<std::size_t>> by_outlet;
    for (std::size_t i = 0; i < articles.size(); ++i) by_outlet[articles[i].outlet].push_back(i);
    SeededRng rng(o_.seed);
    std::vector<bool> keep(articles.size(), false);
    for (auto& [outlet, members] : by_outlet) {
      rng.shuffle(std::span<std::size_t>(members));
      for (std::size_t k = 0; k < members.size() && k < o_.per_outlet; ++k) keep[members[k]] = true;
    }
    std::vector<Article> out;
    for (std::size_t i = 0; i < articles.size(); ++i) {
      if (keep[i]) out.push_back(std::move(articles[i]));
    }
    return out;
  }

  /// Loads the model and parses, runs coref and classifies. With `restrict`
  /// only those articles (matched by id) are classified.
  std::vector<Prediction> predict(const std::vector<Article>* restrict = nullptr) {
    require_file(o_.model, "model");
    require_file(o_.conllu, "conllu");
    require_file(o_.lexicon, "lexicon");
    const auto space = load_space(o_.model);
    const auto lexicon = load_lexicon(o_.lexicon);
    const auto docs = load_conllu(o_.conllu);

    std::vector<Article> articles;
    if (restrict) {
      articles = *restrict;
      attach_parses(articles, docs);
    } else if (!o_.corpus.empty()) {
      require_file(o_.corpus, "corpus");
      articles = load();
      attach_parses(articles, docs);
    } else {
      articles = articles_from_parses(docs);
    }

    std::optional<SubstitutionTable> subs;
    if (!o_.substitutions.empty()) {
      require_file(o_.substitutions, "substitutions");
      subs = load_substitutions(o_.substitutions);
    }
    articles = resolve_coreferences(std::move(articles), subs ? &*subs : nullptr, o_.jobs);
    auto predictions = classify_all(articles, space, lexicon, o_.jobs);

    if (!o_.explain_out.empty()) {
      std::ostringstream ss;
      for (const auto& a : articles) {
        ojson j = ojson::object();
        j["article_id"] = a.id;
        ojson rows = ojson::array();
        try {
          const auto r = polstance::classify(a, space, lexicon);
          for (const auto& c : explain(r, o_.top_k)) {
            rows.push_back({{"noun", c.noun},
                            {"article_stance", c.article_stance},
                            {"contribution", c.per_class[leaning_slot(r.predicted)]}});
          }
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::unclassifiable) throw;
        }
        j["top"] = std::move(rows);
        ss << j.dump() << '\n';
      }
      write_file_atomic(o_.explain_out, ss.str());
    }
    return predictions;
  }

  void emit(const std::string& path, const std::string& contents) {
    if (path.empty()) {
      out_ << contents;
    } else {
      write_file_atomic(path, contents);
    }
  }

  Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  RunConfig config_;
};

void report(std::ostream& err, std::string_view kind, const std::string& message) {
  ojson j = ojson::object();
  j["error"] = {{"kind", kind}, {"message", message}};
  err << j.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  Runner runner(o, out, err);

  CLI::App app{"Rule-based political stance classification of news articles", "polstance"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  struct Command {
    CLI::App* app;
    std::function<void()> run;
  };
  std::vector<Command> commands;
  auto command = [&](const char* name, const char* help, std::function<void()> run) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config, "key = value file; command-line flags win");
    sub->add_option("--jobs", o.jobs, "worker threads for per-article work")
        ->check(CLI::PositiveNumber);
    commands.push_back({sub, std::move(run)});
    return sub;
  };
  auto corpus_opts = [&](CLI::App* sub) {
    sub->add_option("--corpus", o.corpus, "article JSONL");
    sub->add_option("--window", o.window, "keep only YYYY-MM-DD:YYYY-MM-DD");
  };

  auto* stats = command("stats", "article counts per leaning, outlet and quarter",
                        [&] { runner.stats(); });
  corpus_opts(stats);
  stats->add_option("--out", o.out, "TSV output (stdout if omitted)");

  auto* balance = command("balance", "cap every class at --cap articles", [&] { runner.balance(); });
  corpus_opts(balance);
  balance->add_option("--cap", o.cap)->check(CLI::PositiveNumber);
  balance->add_option("--seed", o.seed);
  balance->add_option("--out", o.out, "balanced JSONL (stdout if omitted)");

  auto* split = command("split", "stratified train/test split", [&] { runner.split(); });
  corpus_opts(split);
  split->add_option("--train-fraction", o.train_fraction)->check(CLI::Range(0.0, 1.0));
  split->add_option("--seed", o.seed);
  split->add_option("--train-out", o.train_out);
  split->add_option("--test-out", o.test_out);

  auto* train = command("train", "build the leaning space model", [&] { runner.train(); });
  corpus_opts(train);
  train->add_option("--conllu", o.conllu, "parsed articles");
  train->add_option("--substitutions", o.substitutions, "external coref output (JSONL)");
  train->add_option("--lexicon", o.lexicon, "valence TSV");
  train->add_option("--seed", o.seed);
  train->add_option("--cap", o.cap)->check(CLI::PositiveNumber);
  train->add_option("--train-fraction", o.train_fraction)->check(CLI::Range(0.0, 1.0));
  train->add_option("--min-mentions", o.min_mentions)->check(CLI::PositiveNumber);
  train->add_option("--out", o.out, "model JSON");
  train->add_option("--test-out", o.test_out, "held-out split as JSONL");

  auto* classify = command("classify", "predict leanings for parsed articles",
                           [&] { runner.classify(); });
  corpus_opts(classify);
  classify->add_option("--model", o.model);
  classify->add_option("--conllu", o.conllu);
  classify->add_option("--substitutions", o.substitutions);
  classify->add_option("--lexicon", o.lexicon);
  classify->add_option("--out", o.out, "prediction JSONL (stdout if omitted)");
  classify->add_option("--explain-out", o.explain_out, "per-article top noun contributions");
  classify->add_option("--top-k", o.top_k);

  auto* evaluate = command("evaluate", "precision/recall/F1 against corpus labels",
                           [&] { runner.evaluate(); });
  corpus_opts(evaluate);
  evaluate->add_option("--predictions", o.predictions);
  evaluate->add_flag("--strict", o.strict, "drop unclassifiable articles from denominators");
  evaluate->add_option("--out", o.out, "metrics JSON");
  evaluate->add_option("--tsv", o.tsv, "metrics TSV");

  auto* apply = command("apply", "quarterly leaning distribution of an outlet corpus",
                        [&] { runner.apply(); });
  corpus_opts(apply);
  apply->add_option("--predictions", o.predictions, "reuse predictions instead of classifying");
  apply->add_option("--model", o.model);
  apply->add_option("--conllu", o.conllu);
  apply->add_option("--substitutions", o.substitutions);
  apply->add_option("--lexicon", o.lexicon);
  apply->add_option("--per-outlet", o.per_outlet, "seeded sample size per outlet (0 = all)");
  apply->add_option("--seed", o.seed);
  apply->add_option("--out", o.out, "distribution CSV");
  apply->add_option("--json", o.tsv, "distribution JSON with full precision");

  auto* refres = command("refres-eval", "score reference resolution against gold relations",
                         [&] { runner.refres_eval(); });
  refres->add_option("--conllu", o.conllu);
  refres->add_option("--gold", o.gold);
  refres->add_option("--out", o.out, "scores JSON");

  try {
    auto args = with_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    report(err, "config", e.what());
    return 2;
  } catch (const Error& e) {
    report(err, to_string(e.kind()), e.what());
    return 1;
  }

  for (const auto& c : commands) {
    if (!c.app->parsed()) continue;
    RunConfig config;
    config.command = c.app->get_name();
    for (const auto* opt : c.app->get_options()) {
      const auto name = opt->get_name(false, true);
      static const std::unordered_set<std::string> kNotDigested = {
          "--config", "--jobs",   "--help",  "--out",        "--train-out",
          "--test-out", "--tsv", "--json", "--explain-out"};
      if (opt->count() == 0 || kNotDigested.count(name)) continue;
      config.values[name] = opt->as<std::string>();
    }
    runner.set_config(std::move(config));
    try {
      c.run();
    } catch (const Error& e) {
      report(err, to_string(e.kind()), e.what());
      return 1;
    } catch (const std::exception& e) {
      report(err, "internal", e.what());
      return 1;
    }
    return 0;
  }
  return 1;
}

}  // namespace polstance
