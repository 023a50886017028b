#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "fractal/construction.hpp"
#include "fractal/skeleton.hpp"

namespace fractal {

struct HttpRequest {
  std::string method = "GET";
  std::string path;
  std::map<std::string, std::string> params;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// JSON facade over lazily expanded, cached level sequences for one loaded
// skeleton. Endpoints:
//
//   GET  /api/skeleton
//   POST /api/skeleton                    (text/plain DSL body)
//   GET  /api/graph?level&mode&low&high
//   GET  /api/subtype?lhs&rhs
//   GET  /api/embeddings?level&class&hole&kind
//   GET  /api/census?level&mode
//
// Errors: 400 malformed request or type, 404 unknown class or route,
// 409 budget exceeded (with the largest affordable level), 422 DSL error.
class ExplorerService {
 public:
  explicit ExplorerService(const std::string& skeleton_source = "", Budget budget = {});
  ~ExplorerService();

  ExplorerService(const ExplorerService&) = delete;
  ExplorerService& operator=(const ExplorerService&) = delete;

  HttpResponse handle(const HttpRequest& request);

  // Starts an HTTP listener on a background thread; port 0 picks a free
  // port. Returns the bound port.
  int start(const std::string& host, int port);
  void stop();
  // Blocks serving until the process is stopped.
  void serve(const std::string& host, int port);

 private:
  struct Session;
  class Listener;

  std::shared_ptr<Session> session() const;
  void load(const std::string& source);  // throws on DSL errors

  HttpResponse get_skeleton(const Session& s) const;
  HttpResponse get_graph(Session& s, const HttpRequest& r);
  HttpResponse get_subtype(const Session& s, const HttpRequest& r) const;
  HttpResponse get_embeddings(Session& s, const HttpRequest& r);
  HttpResponse get_census(Session& s, const HttpRequest& r);

  Budget budget_;
  mutable std::mutex session_mutex_;
  std::shared_ptr<Session> session_;
  std::unique_ptr<Listener> listener_;
};

}  // namespace fractal
