// SPDX-License-Identifier: Apache-2.0

#ifndef SECRISK_SERVICE_HPP
#define SECRISK_SERVICE_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "secrisk/tra_engine.hpp"

namespace secrisk::service {

struct StoredSession {
  tra::AssessmentSession session;
  std::uint64_t version = 1;
  std::string created;
  std::string updated;
};

// One JSON document per session under `dir`, replaced atomically
// (write temp file, fsync, rename) on every successful mutation.
class SessionStore {
 public:
  using Mutation = std::function<tra::AssessmentSession(const tra::AssessmentSession&)>;

  explicit SessionStore(std::filesystem::path dir);

  std::shared_ptr<const StoredSession> get(const std::string& id) const;

  // Assigns a fresh id when session.id is empty. Fails if the id exists.
  std::shared_ptr<const StoredSession> create(tra::AssessmentSession session);

  // Runs `mutate` on the committed document iff its version equals
  // expected_version; the result is validated, persisted and committed
  // with version + 1. Mutations are serialized store-wide.
  std::shared_ptr<const StoredSession> update(const std::string& id, std::uint64_t expected_version,
                                              const Mutation& mutate);

  const std::filesystem::path& directory() const noexcept { return dir_; }

 private:
  void persist(const StoredSession& doc) const;
  std::filesystem::path path_for(const std::string& id) const;

  std::filesystem::path dir_;
  mutable std::shared_mutex map_mutex_;
  std::mutex write_mutex_;
  std::map<std::string, std::shared_ptr<const StoredSession>> sessions_;
};

struct ApiRequest {
  std::string method;
  std::string path;
  std::string body;
  // Optional expected version (If-Match); the body field "version" wins.
  std::string if_match;
};

struct ApiResponse {
  int status = 200;
  std::string body;
};

// Transport-independent request handling. Every success body is the
// canonical encoding of the corresponding engine call on the stored
// document; the service adds no domain logic of its own.
class AssessmentApi {
 public:
  explicit AssessmentApi(SessionStore& store) : store_(store) {}

  ApiResponse handle(const ApiRequest& request);

 private:
  SessionStore& store_;
};

// cpp-httplib front end over AssessmentApi.
class HttpServer {
 public:
  HttpServer(AssessmentApi& api, std::string ui_dir = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds (port 0 picks a free port) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace secrisk::service

#endif  // SECRISK_SERVICE_HPP
