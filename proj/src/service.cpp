// SPDX-License-Identifier: Apache-2.0

#include "secrisk/service.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <random>
#include <sstream>
#include <vector>

#include <fcntl.h>
#include <unistd.h>

#include <httplib.h>

#include "secrisk/codec.hpp"
#include "secrisk/error.hpp"
#include "secrisk/semiquant.hpp"

namespace secrisk::service {

namespace {

using codec::json;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fresh_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
  return buf;
}

bool valid_id(const std::string& id) {
  return !id.empty() && id.size() <= 64 && std::all_of(id.begin(), id.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '_';
  });
}

json envelope(const StoredSession& doc) {
  return {{"id", doc.session.id},
          {"version", doc.version},
          {"created", doc.created},
          {"updated", doc.updated},
          {"session", codec::encode(doc.session)}};
}

void write_atomically(const std::filesystem::path& target, const std::string& text) {
  const std::filesystem::path tmp = target.string() + ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) throw std::runtime_error("cannot write " + tmp.string());
  std::size_t done = 0;
  while (done < text.size()) {
    const ssize_t n = ::write(fd, text.data() + done, text.size() - done);
    if (n <= 0) {
      ::close(fd);
      throw std::runtime_error("short write to " + tmp.string());
    }
    done += static_cast<std::size_t>(n);
  }
  ::fsync(fd);
  ::close(fd);
  std::filesystem::rename(tmp, target);
}

}  // namespace

SessionStore::SessionStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    const json doc = codec::read_file(entry.path().string());
    auto stored = std::make_shared<StoredSession>();
    stored->session = codec::decode_session(doc.at("session"));
    stored->version = doc.at("version").get<std::uint64_t>();
    stored->created = doc.at("created").get<std::string>();
    stored->updated = doc.at("updated").get<std::string>();
    sessions_.emplace(stored->session.id, std::move(stored));
  }
}

std::filesystem::path SessionStore::path_for(const std::string& id) const {
  return dir_ / (id + ".json");
}

void SessionStore::persist(const StoredSession& doc) const {
  write_atomically(path_for(doc.session.id), codec::to_text(envelope(doc)));
}

std::shared_ptr<const StoredSession> SessionStore::get(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("no assessment '" + id + "'");
  return it->second;
}

std::shared_ptr<const StoredSession> SessionStore::create(tra::AssessmentSession session) {
  // The map only changes under write_mutex_, so holding it is enough to read.
  std::lock_guard write(write_mutex_);
  if (session.id.empty()) {
    do {
      session.id = fresh_id();
    } while (sessions_.count(session.id));
  }
  if (!valid_id(session.id)) {
    throw DomainError("assessment id must be 1-64 characters of [A-Za-z0-9_-]");
  }
  if (sessions_.count(session.id)) {
    throw VersionConflictError("assessment '" + session.id + "' already exists");
  }
  tra::validate_session(session);
  const std::string now = utc_now();
  auto doc = std::make_shared<const StoredSession>(StoredSession{std::move(session), 1, now, now});
  persist(*doc);
  std::unique_lock lock(map_mutex_);
  sessions_.emplace(doc->session.id, doc);
  return doc;
}

std::shared_ptr<const StoredSession> SessionStore::update(const std::string& id,
                                                          std::uint64_t expected_version,
                                                          const Mutation& mutate) {
  std::lock_guard write(write_mutex_);
  const auto current = get(id);
  if (current->version != expected_version) {
    throw VersionConflictError("assessment '" + id + "' is at version " +
                               std::to_string(current->version) + ", not " +
                               std::to_string(expected_version));
  }
  tra::AssessmentSession next = mutate(current->session);
  next.id = id;
  const auto& old_history = current->session.history;
  if (next.history.size() < old_history.size() ||
      !std::equal(old_history.begin(), old_history.end(), next.history.begin())) {
    throw ValidationError({"iteration history is append-only"});
  }
  tra::validate_session(next);
  auto doc = std::make_shared<const StoredSession>(
      StoredSession{std::move(next), current->version + 1, current->created, utc_now()});
  persist(*doc);
  std::unique_lock lock(map_mutex_);
  sessions_[id] = doc;
  return doc;
}

namespace {

ApiResponse ok(const json& body, int status = 200) { return {status, codec::to_text(body)}; }

ApiResponse failure(int status, const std::string& code, const std::string& message,
                    const std::vector<std::string>& findings = {}) {
  json body = {{"error", code}, {"message", message}};
  if (!findings.empty()) body["findings"] = findings;
  return {status, codec::to_text(body)};
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::stringstream ss(path.substr(0, path.find('?')));
  std::string part;
  while (std::getline(ss, part, '/')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

json body_json(const ApiRequest& r) {
  if (r.body.empty()) return json::object();
  return codec::parse_text(r.body);
}

std::uint64_t expected_version(const json& body, const ApiRequest& r) {
  if (body.is_object() && body.contains("version")) {
    if (!body["version"].is_number_unsigned()) throw DomainError("'version' must be a non-negative integer");
    return body["version"].get<std::uint64_t>();
  }
  if (!r.if_match.empty()) {
    std::string v = r.if_match;
    v.erase(std::remove(v.begin(), v.end(), '"'), v.end());
    try {
      return std::stoull(v);
    } catch (const std::exception&) {
      throw DomainError("malformed If-Match header");
    }
  }
  throw DomainError("mutations require the current 'version'");
}

}  // namespace

ApiResponse AssessmentApi::handle(const ApiRequest& r) {
  const auto p = split_path(r.path);
  const auto is = [&](const char* method, std::initializer_list<const char*> shape) {
    if (r.method != method || p.size() != shape.size()) return false;
    std::size_t k = 0;
    for (const char* s : shape) {
      if (*s != '*' && p[k] != s) return false;
      ++k;
    }
    return true;
  };

  try {
    if (is("POST", {"assessments"})) {
      json body = body_json(r);
      const auto doc = store_.create(codec::decode_session(body));
      return ok({{"id", doc->session.id}, {"version", doc->version}}, 201);
    }
    if (is("GET", {"assessments", "*"})) {
      return ok(envelope(*store_.get(p[1])));
    }
    if (is("PUT", {"assessments", "*", "scenarios", "*"})) {
      const json body = body_json(r);
      const auto version = expected_version(body, r);
      const std::string sid = p[3];
      const auto doc = store_.update(p[1], version, [&](const tra::AssessmentSession& s) {
        json sj = body.at("scenario");
        if (!sj.contains("id")) sj["id"] = sid;
        tra::ThreatScenario scenario = codec::decode_scenario(sj, s.matrix);
        if (scenario.id != sid) throw DomainError("scenario id does not match the path");
        tra::AssessmentSession next = s;
        auto it = std::find_if(next.scenarios.begin(), next.scenarios.end(),
                               [&](const auto& e) { return e.id == sid; });
        if (it != next.scenarios.end()) {
          *it = std::move(scenario);
        } else {
          next.scenarios.push_back(std::move(scenario));
        }
        return next;
      });
      return ok({{"id", doc->session.id}, {"version", doc->version}});
    }
    if (is("POST", {"assessments", "*", "evaluate"})) {
      const auto doc = store_.get(p[1]);
      return ok(codec::encode(tra::evaluate_session(doc->session), doc->session.matrix));
    }
    if (is("POST", {"assessments", "*", "zones", "*", "bump-preview"})) {
      const auto doc = store_.get(p[1]);
      const json body = body_json(r);
      std::vector<FoundationalRequirement> frs;
      for (const auto& f : body.at("frs")) frs.push_back(parse_requirement(f.get<std::string>()));
      return ok(codec::encode(tra::propose_bump(doc->session, p[3], frs)));
    }
    if (is("POST", {"assessments", "*", "zones", "*", "sl"})) {
      const json body = body_json(r);
      const auto version = expected_version(body, r);
      const SecurityLevelVector v = codec::decode_vector(body.at("vector"));
      const auto step = body.contains("step") ? tra::parse_process_step(body["step"].get<std::string>())
                                              : tra::ProcessStep::ApplyAdditionalCountermeasures;
      const std::string action = body.contains("action") ? body["action"].get<std::string>() : "";
      tra::Evaluation evaluation;
      const auto doc = store_.update(p[1], version, [&](const tra::AssessmentSession& s) {
        auto result = tra::apply_and_reevaluate(s, p[3], v, step, action);
        evaluation = std::move(result.evaluation);
        return std::move(result.session);
      });
      return ok({{"version", doc->version},
                 {"evaluation", codec::encode(evaluation, doc->session.matrix)}});
    }
    if (is("POST", {"assessments", "*", "zones", "*", "minimize"})) {
      const auto doc = store_.get(p[1]);
      return ok(codec::encode_minimal(p[3], tra::auto_minimize(doc->session, p[3])));
    }
    if (is("GET", {"assessments", "*", "draft-comparison"})) {
      const auto doc = store_.get(p[1]);
      return ok(codec::encode(tra::compare_with_draft(doc->session), doc->session.matrix));
    }
    if (is("GET", {"assessments", "*", "history"})) {
      return ok(codec::encode_history(store_.get(p[1])->session));
    }
    if (is("POST", {"analysis", "spread"})) {
      const json body = body_json(r);
      const auto scheme = body.contains("preset") && body["preset"] == "decade" ? semiquant::decade_scheme()
                                                                               : codec::decode_scheme(body);
      return ok(codec::encode(semiquant::spread_analysis(scheme)));
    }
    return failure(404, "no_route", r.method + " " + r.path + " is not an endpoint");
  } catch (const ValidationError& e) {
    return failure(422, "validation", e.what(), e.findings());
  } catch (const NotFoundError& e) {
    return failure(404, "not_found", e.what());
  } catch (const VersionConflictError& e) {
    return failure(409, "version_conflict", e.what());
  } catch (const DomainError& e) {
    return failure(400, "domain", e.what());
  } catch (const json::exception& e) {
    return failure(400, "malformed_body", e.what());
  }
}

struct HttpServer::Impl {
  AssessmentApi& api;
  httplib::Server server;
};

HttpServer::HttpServer(AssessmentApi& api, std::string ui_dir) : impl_(new Impl{api, {}}) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    ApiRequest r{req.method, req.path, req.body, req.get_header_value("If-Match")};
    ApiResponse out = impl_->api.handle(r);
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  if (!ui_dir.empty()) impl_->server.set_mount_point("/", ui_dir);
  impl_->server.Get(R"(/(assessments|analysis)(/.*)?)", forward);
  impl_->server.Post(R"(/(assessments|analysis)(/.*)?)", forward);
  impl_->server.Put(R"(/(assessments|analysis)(/.*)?)", forward);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace secrisk::service
