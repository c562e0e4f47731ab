// senti: prepare | train | evaluate | predict | benchmark | serve

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "senti/app.hpp"
#include "senti/service.hpp"

namespace {

namespace fs = std::filesystem;
using namespace senti;

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

struct Globals {
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "text";
};

void add_feature_flags(CLI::App* cmd, FeatureConfig& f) {
  cmd->add_option("--ngram-min", f.ngram_min, "Smallest n-gram length")->capture_default_str();
  cmd->add_option("--ngram-max", f.ngram_max, "Largest n-gram length")->capture_default_str();
  cmd->add_option("--max-features", f.max_features, "Vocabulary cap")->capture_default_str();
  cmd->add_option("--min-df", f.min_df, "Minimum document frequency")->capture_default_str();
  cmd->add_flag("--sublinear-tf,!--no-sublinear-tf", f.sublinear_tf, "Use 1 + ln(tf)")->capture_default_str();
}

void add_train_flags(CLI::App* cmd, TrainConfig& t, std::string& weight_mode, double& alpha) {
  cmd->add_option("--max-iter", t.max_iter, "Optimizer iteration cap")->capture_default_str();
  cmd->add_option("--tol", t.tol, "Gradient infinity-norm stopping threshold")->capture_default_str();
  cmd->add_option("--lambda", t.lambda, "L2 regularization strength")->capture_default_str();
  cmd->add_option("--weight-mode", weight_mode, "Class weighting for logreg/svm")
      ->check(CLI::IsMember({"balanced", "uniform"}))
      ->capture_default_str();
  cmd->add_option("--alpha", alpha, "Naive Bayes additive smoothing")->capture_default_str();
}

bool split_bind(const std::string& bind, std::string& host, int& port) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) return false;
  host = bind.substr(0, colon);
  try {
    port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
    return false;
  }
  return port >= 0 && port < 65536;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Sentiment classification toolkit: TF-IDF features with logistic regression, linear SVM and naive Bayes"};
  cli.set_config("--config", "", "TOML/INI file supplying option values (flags take precedence)");
  cli.require_subcommand(1);
  cli.fallthrough();

  Globals globals;
  cli.add_option("--seed", globals.seed, "Seed for splitting")->capture_default_str();
  cli.add_option("--out", globals.out, "Output directory");
  cli.add_option("--format", globals.format, "Output format for predict")
      ->check(CLI::IsMember({"text", "machine"}))
      ->capture_default_str();

  // prepare
  app::PrepareOptions prepare;
  std::string prepare_input;
  auto* prepare_cmd = cli.add_subcommand("prepare", "Clean a review CSV and write a stratified train/test split");
  prepare_cmd->add_option("-i,--input", prepare_input, "CSV with review_text and label columns")->required();
  prepare_cmd->add_option("--test-fraction", prepare.test_fraction, "Held-out fraction per class")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  // train
  app::TrainOptions train;
  std::string train_input, train_model = "svm", train_output, train_weight_mode = "balanced";
  auto* train_cmd = cli.add_subcommand("train", "Fit a vocabulary and classifier and save the model envelope");
  train_cmd->add_option("-i,--train", train_input, "Training CSV")->required();
  train_cmd->add_option("-m,--model", train_model, "Classifier")
      ->check(CLI::IsMember({"logreg", "svm", "nb"}))
      ->capture_default_str();
  train_cmd->add_option("-o,--output", train_output, "Envelope path (default: <out>/<model>.json)");
  add_feature_flags(train_cmd, train.features);
  add_train_flags(train_cmd, train.train, train_weight_mode, train.alpha);

  // evaluate
  app::EvaluateOptions evaluate;
  std::string eval_model, eval_test;
  auto* eval_cmd = cli.add_subcommand("evaluate", "Score a saved model on a labelled CSV");
  eval_cmd->add_option("-m,--model", eval_model, "Model envelope")->required();
  eval_cmd->add_option("-t,--test", eval_test, "Test CSV")->required();

  // predict
  app::PredictOptions predict;
  std::string predict_model, predict_file;
  std::optional<std::string> predict_text;
  auto* predict_cmd = cli.add_subcommand("predict", "Classify raw text, one record per input line");
  predict_cmd->add_option("-m,--model", predict_model, "Model envelope")->required();
  predict_cmd->add_option("--text", predict_text, "A single review");
  predict_cmd->add_option("--file", predict_file, "File with one review per line")->check(CLI::ExistingFile);

  // benchmark
  app::BenchmarkOptions bench;
  std::string bench_input, bench_weight_mode = "balanced";
  auto* bench_cmd = cli.add_subcommand("benchmark", "Prepare, train all three models on one split, and compare");
  bench_cmd->add_option("-i,--input", bench_input, "Raw review CSV")->required();
  bench_cmd->add_option("--test-fraction", bench.test_fraction, "Held-out fraction per class")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  add_feature_flags(bench_cmd, bench.features);
  add_train_flags(bench_cmd, bench.train, bench_weight_mode, bench.alpha);

  // serve
  std::vector<std::string> serve_models;
  std::string serve_dir, serve_bind = "127.0.0.1:8080", serve_cors = "*";
  bool serve_quiet = false;
  auto* serve_cmd = cli.add_subcommand("serve", "Serve models over HTTP (GET /health, GET /models, POST /predict)");
  serve_cmd->add_option("-m,--model", serve_models, "Model envelope (repeatable)");
  serve_cmd->add_option("--model-dir", serve_dir, "Directory of *.json envelopes")->envname("SENTI_MODEL_DIR");
  serve_cmd->add_option("--bind", serve_bind, "host:port")->envname("SENTI_BIND")->capture_default_str();
  serve_cmd->add_option("--cors", serve_cors, "Comma-separated allowed origins, * for any")
      ->envname("SENTI_CORS_ORIGINS")
      ->capture_default_str();
  serve_cmd->add_flag("--quiet", serve_quiet, "Disable request logging");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return app::kExitDataError;
  }

  auto& out = std::cout;
  auto& err = std::cerr;
  auto need_out = [&](const char* cmd) {
    if (globals.out.empty()) {
      err << "error: " << cmd << " requires --out\n";
      return false;
    }
    return true;
  };

  try {
    if (*prepare_cmd) {
      if (!need_out("prepare")) return app::kExitDataError;
      prepare.input = prepare_input;
      prepare.out_dir = globals.out;
      prepare.seed = globals.seed;
      return app::cmd_prepare(prepare, out, err);
    }
    if (*train_cmd) {
      train.train_csv = train_input;
      train.kind = parse_model_kind(train_model);
      train.train.weight_mode = parse_weight_mode(train_weight_mode);
      train.seed = globals.seed;
      if (!train_output.empty()) {
        train.output = train_output;
      } else if (!globals.out.empty()) {
        train.output = fs::path(globals.out) / (train_model + ".json");
      } else {
        err << "error: train requires --output or --out\n";
        return app::kExitDataError;
      }
      return app::cmd_train(train, out, err);
    }
    if (*eval_cmd) {
      if (!need_out("evaluate")) return app::kExitDataError;
      evaluate.model = eval_model;
      evaluate.test_csv = eval_test;
      evaluate.out_dir = globals.out;
      return app::cmd_evaluate(evaluate, out, err);
    }
    if (*predict_cmd) {
      predict.model = predict_model;
      predict.text = predict_text;
      if (!predict_file.empty()) predict.file = predict_file;
      predict.format = globals.format == "machine" ? app::OutputFormat::Machine : app::OutputFormat::Text;
      return app::cmd_predict(predict, out, err);
    }
    if (*bench_cmd) {
      if (!need_out("benchmark")) return app::kExitDataError;
      bench.input = bench_input;
      bench.out_dir = globals.out;
      bench.seed = globals.seed;
      bench.train.weight_mode = parse_weight_mode(bench_weight_mode);
      return app::cmd_benchmark(bench, out, err);
    }
    if (*serve_cmd) {
      std::vector<fs::path> paths(serve_models.begin(), serve_models.end());
      if (!serve_dir.empty()) {
        for (auto& p : service::ModelRegistry::scan_directory(serve_dir)) paths.push_back(std::move(p));
      }
      std::string host;
      int port = 0;
      if (!split_bind(serve_bind, host, port)) {
        err << "error: --bind expects host:port, got '" << serve_bind << "'\n";
        return app::kExitDataError;
      }
      service::ServiceConfig config;
      config.cors_origins = service::split_list(serve_cors);
      if (!serve_quiet) config.log = &std::cerr;
      service::Service svc(service::ModelRegistry::load(paths), config);  // fails before binding
      if (!svc.bind(host, port)) {
        err << "error: cannot bind " << serve_bind << "\n";
        return app::kExitDataError;
      }
      for (const auto& e : svc.registry().entries()) {
        out << "loaded " << e.id << " (" << to_string(kind_of(e.bundle.model)) << ", " << e.bundle.vocab.size()
            << " terms)\n";
      }
      out << "listening on " << serve_bind << std::endl;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::thread watcher([&] {
        while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
        svc.stop();
      });
      svc.listen();
      g_stop = true;
      watcher.join();
      return app::kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_numeric() ? app::kExitNumericError : app::kExitDataError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return app::kExitDataError;
  }
  return app::kExitDataError;
}
