#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <future>
#include <random>
#include <sstream>
#include <thread>

#include "senti/service.hpp"
#include "test_util.hpp"

using namespace senti;
namespace fs = std::filesystem;

namespace {

std::vector<fs::path> golden_paths() {
  return {test::kGolden / "svm.json", test::kGolden / "logreg.json", test::kGolden / "nb.json"};
}

/// Runs a Service on an ephemeral port for the lifetime of the object.
class Running {
 public:
  explicit Running(service::ServiceConfig config = {})
      : svc_(service::ModelRegistry::load(golden_paths()), std::move(config)) {
    port_ = svc_.bind_any_port("127.0.0.1");
    thread_ = std::thread([this] { svc_.listen(); });
    svc_.wait_until_ready();
  }
  ~Running() {
    svc_.stop();
    thread_.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(30, 0);
    return c;
  }
  int port() const { return port_; }
  const service::Service& svc() const { return svc_; }

 private:
  service::Service svc_;
  int port_ = 0;
  std::thread thread_;
};

nlohmann::json predict_body(const std::string& text, const std::string& model = {}) {
  nlohmann::json j = {{"text", text}};
  if (!model.empty()) j["model"] = model;
  return j;
}

/// Response minus the timing field.
nlohmann::json stable(nlohmann::json j) {
  j.erase("latency_ms");
  return j;
}

}  // namespace

TEST(Service, HealthAndModels) {
  Running server;
  auto c = server.client();
  auto health = c.Get("/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(nlohmann::json::parse(health->body)["status"], "ok");

  auto models = c.Get("/models");
  ASSERT_TRUE(models);
  const auto j = nlohmann::json::parse(models->body);
  EXPECT_EQ(j["default"], "svm");
  ASSERT_EQ(j["models"].size(), 3u);
  EXPECT_EQ(j["models"][1]["id"], "logreg");
  EXPECT_EQ(j["models"][2]["model_type"], "nb");
  EXPECT_EQ(j["models"][0]["class_names"], nlohmann::json({"negatif", "netral", "positif"}));
  EXPECT_GT(j["models"][0]["vocabulary_size"].get<int>(), 0);
}

TEST(Service, MatchesLibraryInference) {
  Running server;
  auto c = server.client();
  const auto& registry = server.svc().registry();
  std::mt19937_64 rng(77);
  for (int i = 0; i < 1000; ++i) {
    // JSON strings must be valid UTF-8.
    const auto text = unicode::encode(unicode::decode(test::random_text(rng)));
    const auto& entry = registry.entries()[i % 3];
    auto res = c.Post("/predict", predict_body(text, entry.id).dump(), "application/json");
    ASSERT_TRUE(res);
    ASSERT_EQ(res->status, 200) << res->body;
    auto got = stable(nlohmann::json::parse(res->body));
    auto want = to_json(infer(entry.bundle, text));
    want["model"] = entry.id;
    // Both sides pass through the same JSON number formatting.
    ASSERT_EQ(got, nlohmann::json::parse(want.dump())) << text;
  }
}

TEST(Service, ConcurrentRequestsMatchSequential) {
  Running server;
  std::mt19937_64 rng(78);
  std::vector<std::string> texts;
  for (int i = 0; i < 100; ++i) texts.push_back(unicode::encode(unicode::decode(test::random_text(rng))) + " bagus");
  std::vector<nlohmann::json> sequential;
  {
    auto c = server.client();
    for (const auto& t : texts) {
      auto res = c.Post("/predict", predict_body(t).dump(), "application/json");
      ASSERT_TRUE(res);
      sequential.push_back(stable(nlohmann::json::parse(res->body)));
    }
  }
  std::vector<std::future<nlohmann::json>> burst;
  for (const auto& t : texts) {
    burst.push_back(std::async(std::launch::async, [&server, t] {
      auto c = server.client();
      auto res = c.Post("/predict", predict_body(t).dump(), "application/json");
      return res ? stable(nlohmann::json::parse(res->body)) : nlohmann::json(httplib::to_string(res.error()));
    }));
  }
  for (std::size_t i = 0; i < texts.size(); ++i) EXPECT_EQ(burst[i].get(), sequential[i]) << texts[i];
}

TEST(Service, RejectsBadRequests) {
  Running server;
  auto c = server.client();
  auto unknown = c.Post("/predict", predict_body("bagus", "bert").dump(), "application/json");
  ASSERT_TRUE(unknown);
  EXPECT_EQ(unknown->status, 400);
  EXPECT_NE(nlohmann::json::parse(unknown->body)["error"].get<std::string>().find("bert"), std::string::npos);

  auto oversize = c.Post("/predict", predict_body(std::string(service::kMaxTextChars + 1, 'a')).dump(), "application/json");
  ASSERT_TRUE(oversize);
  EXPECT_EQ(oversize->status, 400);
  // The limit counts code points, not bytes.
  std::string at_limit;
  for (std::size_t i = 0; i < service::kMaxTextChars; ++i) at_limit += "é";
  auto ok = c.Post("/predict", predict_body(at_limit).dump(), "application/json");
  ASSERT_TRUE(ok);
  EXPECT_EQ(ok->status, 200);

  for (const char* body : {"{not json", "[]", "{\"txt\":\"x\"}", "{\"text\":5}", "{\"text\":\"x\",\"model\":3}"}) {
    auto res = c.Post("/predict", body, "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 400) << body;
    EXPECT_TRUE(nlohmann::json::parse(res->body).contains("error"));
  }
  auto missing = c.Get("/nope");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
}

TEST(Service, WarningsForUninformativeText) {
  Running server;
  auto c = server.client();
  auto res = c.Post("/predict", predict_body("!!!").dump(), "application/json");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200);
  auto j = nlohmann::json::parse(res->body);
  EXPECT_TRUE(j["warning"].get<std::string>().starts_with("empty_after_cleaning"));
  EXPECT_EQ(j["cleaned_text"], "");
  EXPECT_TRUE(j["top_features"].empty());

  res = c.Post("/predict", predict_body("qwertyuiop zxcvbnm", "logreg").dump(), "application/json");
  j = nlohmann::json::parse(res->body);
  EXPECT_TRUE(j["warning"].get<std::string>().starts_with("no_known_terms"));
  EXPECT_EQ(j["model"], "logreg");
  double sum = 0;
  for (auto& [k, v] : j["scores"].items()) sum += v.get<double>();
  EXPECT_NEAR(sum, 1.0, 1e-12);

  res = c.Post("/predict", predict_body("bagus").dump(), "application/json");
  EXPECT_TRUE(nlohmann::json::parse(res->body)["warning"].is_null());
}

TEST(Service, CorsWildcard) {
  Running server;
  auto c = server.client();
  auto res = c.Get("/health", {{"Origin", "http://localhost:5173"}});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
  auto pre = c.Options("/predict", {{"Origin", "http://localhost:5173"},
                                    {"Access-Control-Request-Method", "POST"},
                                    {"Access-Control-Request-Headers", "Content-Type"}});
  ASSERT_TRUE(pre);
  EXPECT_EQ(pre->status, 204);
  EXPECT_NE(pre->get_header_value("Access-Control-Allow-Methods").find("POST"), std::string::npos);
  EXPECT_NE(pre->get_header_value("Access-Control-Allow-Headers").find("Content-Type"), std::string::npos);
}

TEST(Service, CorsAllowlist) {
  service::ServiceConfig config;
  config.cors_origins = service::split_list("https://app.example, http://localhost:5173");
  ASSERT_EQ(config.cors_origins.size(), 2u);
  Running server(config);
  auto c = server.client();
  auto allowed = c.Get("/health", {{"Origin", "http://localhost:5173"}});
  EXPECT_EQ(allowed->get_header_value("Access-Control-Allow-Origin"), "http://localhost:5173");
  auto denied = c.Get("/health", {{"Origin", "https://evil.example"}});
  EXPECT_FALSE(denied->has_header("Access-Control-Allow-Origin"));
}

TEST(Service, StructuredRequestLog) {
  std::ostringstream log;
  service::ServiceConfig config;
  config.log = &log;
  {
    Running server(config);
    auto c = server.client();
    c.Get("/health");
    c.Post("/predict", predict_body("bagus").dump(), "application/json");
  }
  std::istringstream in(log.str());
  std::string line;
  std::vector<nlohmann::json> entries;
  while (std::getline(in, line)) entries.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[0]["path"], "/health");
  EXPECT_EQ(entries[1]["method"], "POST");
  EXPECT_EQ(entries[1]["status"], 200);
}

TEST(Service, RegistryRejectsBadInput) {
  EXPECT_THROW(service::ModelRegistry::load({}), Error);
  EXPECT_THROW(service::ModelRegistry::load({test::kGolden / "svm.json", test::kGolden / "svm.json"}), Error);
  const auto scanned = service::ModelRegistry::scan_directory(test::kGolden);
  // svm_report.json is picked up too and must fail the load.
  EXPECT_THROW(service::ModelRegistry::load(scanned), Error);
}

TEST(ServeCommand, CorruptEnvelopeFailsBeforeBinding) {
  const auto dir = fs::temp_directory_path() / "senti_serve_corrupt";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::copy_file(test::kGolden / "nb.json", dir / "nb.json");
  write_file(dir / "broken.json", "{\"format_version\": 1}");
  const std::string cmd = "SENTI_BIND=127.0.0.1:0 '" + test::kCli.string() + "' serve --model-dir '" + dir.string() +
                          "' 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_TRUE(pipe);
  std::string out;
  char buf[1024];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 2);
  EXPECT_EQ(out.find("listening"), std::string::npos) << out;
  EXPECT_NE(out.find("error"), std::string::npos) << out;
}
