#pragma once

// HTTP inference service: GET /health, GET /models, POST /predict.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#ifndef CPPHTTPLIB_LISTEN_BACKLOG
#define CPPHTTPLIB_LISTEN_BACKLOG 128
#endif
#include <httplib.h>
#include <json.hpp>

#include "senti/persistence.hpp"
#include "senti/pipeline.hpp"
#include "senti/unicode.hpp"

namespace senti::service {

inline constexpr std::size_t kMaxTextChars = 10000;

/// Immutable after construction; shared by all request threads.
class ModelRegistry {
 public:
  struct Entry {
    std::string id;
    std::filesystem::path path;
    ModelBundle bundle;
  };

  ModelRegistry() = default;
  explicit ModelRegistry(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  /// Loads every envelope or throws; ids are file stems.
  static ModelRegistry load(const std::vector<std::filesystem::path>& paths) {
    if (paths.empty()) throw Error(ErrorKind::InvalidArgument, "no model envelopes given");
    std::vector<Entry> entries;
    for (const auto& path : paths) {
      std::string id = path.stem().string();
      for (const auto& e : entries) {
        if (e.id == id) throw Error(ErrorKind::InvalidArgument, "duplicate model id '" + id + "'");
      }
      entries.push_back({std::move(id), path, load_model(path)});
    }
    return ModelRegistry(std::move(entries));
  }

  /// All `*.json` files in `dir`, sorted by name.
  static std::vector<std::filesystem::path> scan_directory(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    return paths;
  }

  const std::vector<Entry>& entries() const { return entries_; }

  const Entry* find(std::string_view id) const {
    for (const auto& e : entries_) {
      if (e.id == id) return &e;
    }
    return nullptr;
  }

  const Entry& default_entry() const { return entries_.front(); }

 private:
  std::vector<Entry> entries_;
};

struct Response {
  int status = 200;
  nlohmann::json body;
};

inline Response error_response(int status, const std::string& message) {
  return {status, {{"error", message}}};
}

inline nlohmann::json models_listing(const ModelRegistry& registry) {
  nlohmann::json models = nlohmann::json::array();
  for (const auto& e : registry.entries()) {
    models.push_back({{"id", e.id},
                      {"model_type", std::string(to_string(kind_of(e.bundle.model)))},
                      {"vocabulary_size", e.bundle.vocab.size()},
                      {"class_names", kClassNames}});
  }
  return {{"models", models}, {"default", registry.entries().empty() ? "" : registry.default_entry().id}};
}

/// Pure request handler; the HTTP layer only adds transport.
inline Response handle_predict(const ModelRegistry& registry, std::string_view body) {
  const auto start = std::chrono::steady_clock::now();
  nlohmann::json request;
  try {
    request = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception&) {
    return error_response(400, "request body is not valid JSON");
  }
  if (!request.is_object() || !request.contains("text") || !request["text"].is_string()) {
    return error_response(400, "request must be an object with a string field 'text'");
  }
  const auto text = request["text"].get<std::string>();
  if (unicode::length(text) > kMaxTextChars) {
    return error_response(400, "text exceeds " + std::to_string(kMaxTextChars) + " characters");
  }

  const ModelRegistry::Entry* entry = &registry.default_entry();
  if (request.contains("model") && !request["model"].is_null()) {
    if (!request["model"].is_string()) return error_response(400, "'model' must be a string");
    const auto id = request["model"].get<std::string>();
    entry = registry.find(id);
    if (!entry) return error_response(400, "unknown model id '" + id + "'");
  }

  auto body_json = to_json(infer(entry->bundle, text));
  body_json["model"] = entry->id;
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  body_json["latency_ms"] = elapsed.count();
  return {200, std::move(body_json)};
}

struct ServiceConfig {
  /// Allowed CORS origins; "*" admits any.
  std::vector<std::string> cors_origins{"*"};
  /// Structured (JSON-lines) request log; null disables logging.
  std::ostream* log = nullptr;
};

inline std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Service {
 public:
  Service(ModelRegistry registry, ServiceConfig config) : registry_(std::move(registry)), config_(std::move(config)) {
    routes();
  }

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  bool bind(const std::string& host, int port) { return server_.bind_to_port(host, port); }
  int bind_any_port(const std::string& host) { return server_.bind_to_any_port(host); }
  bool listen() { return server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  void wait_until_ready() const { server_.wait_until_ready(); }
  bool is_running() const { return server_.is_running(); }

  const ModelRegistry& registry() const { return registry_; }

 private:
  void routes() {
    server_.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
      apply_cors(req, res);
      return httplib::Server::HandlerResponse::Unhandled;
    });
    server_.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    server_.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"status":"ok"})", "application/json");
    });
    server_.Get("/models", [this](const httplib::Request&, httplib::Response& res) {
      res.set_content(models_listing(registry_).dump(), "application/json");
    });
    server_.Post("/predict", [this](const httplib::Request& req, httplib::Response& res) {
      const auto r = handle_predict(registry_, req.body);
      res.status = r.status;
      res.set_content(r.body.dump(), "application/json");
    });
    if (config_.log) {
      server_.set_logger([this](const httplib::Request& req, const httplib::Response& res) {
        nlohmann::json line = {{"method", req.method}, {"path", req.path}, {"status", res.status},
                               {"request_bytes", req.body.size()}, {"response_bytes", res.body.size()}};
        std::lock_guard lock(log_mutex_);
        *config_.log << line.dump() << "\n";
        config_.log->flush();
      });
    }
  }

  void apply_cors(const httplib::Request& req, httplib::Response& res) const {
    const auto& allowed = config_.cors_origins;
    const bool any = std::find(allowed.begin(), allowed.end(), "*") != allowed.end();
    const auto origin = req.get_header_value("Origin");
    if (any) {
      res.set_header("Access-Control-Allow-Origin", "*");
    } else if (!origin.empty() && std::find(allowed.begin(), allowed.end(), origin) != allowed.end()) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Vary", "Origin");
    } else {
      return;
    }
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  }

  ModelRegistry registry_;
  ServiceConfig config_;
  httplib::Server server_;
  std::mutex log_mutex_;
};

}  // namespace senti::service
