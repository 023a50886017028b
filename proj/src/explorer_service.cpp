#include "fractal/explorer_service.hpp"

#include <charconv>
#include <optional>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "fractal/error.hpp"
#include "fractal/subtyping.hpp"
#include "fractal/types.hpp"

namespace fractal {

using Json = nlohmann::ordered_json;

struct ExplorerService::Session {
  std::string source;
  std::shared_ptr<const ClassTable> table;
  std::mutex cache_mutex;
  std::map<Mode, LevelSequence> cache;
  std::atomic<std::size_t> nodes_materialized{0};
};

class ExplorerService::Listener {
 public:
  httplib::Server server;
  std::thread thread;
};

namespace {

HttpResponse json_response(int status, const Json& body) {
  return HttpResponse{status, body.dump() + "\n"};
}

HttpResponse error_response(int status, const std::string& message,
                            std::optional<std::size_t> position = std::nullopt) {
  Json body{{"error", message}};
  if (position) body["position"] = *position;
  return json_response(status, body);
}

// Thrown for request-level problems that map directly to a status code.
struct RequestError {
  int status;
  Json body;

};

RequestError request_error(int status, const std::string& message) {
  return RequestError{status, Json{{"error", message}}};
}

int status_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::UnknownClass: return 404;
    case ErrorKind::BudgetExceeded: return 409;
    default: return 400;
  }
}

const std::string* param(const HttpRequest& r, const std::string& name) {
  auto it = r.params.find(name);
  return it == r.params.end() ? nullptr : &it->second;
}

std::size_t natural_param(const HttpRequest& r, const std::string& name, std::size_t fallback) {
  const std::string* v = param(r, name);
  if (v == nullptr || v->empty()) return fallback;
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || ptr != v->data() + v->size()) {
    throw request_error(400, "parameter '" + name + "' must be a natural number");
  }
  return out;
}

Mode mode_param(const HttpRequest& r) {
  const std::string* v = param(r, "mode");
  if (v == nullptr || v->empty()) return Mode::Intervals;
  if (*v == "intervals") return Mode::Intervals;
  if (*v == "wildcards") return Mode::Wildcards;
  throw request_error(400, "parameter 'mode' must be intervals or wildcards");
}

Json renderings(const ClassTable& table, const TypeTerm& t) {
  return Json{{"java", render(table, t, Style::Java)},
              {"short", render(table, t, Style::Short)},
              {"interval", render(table, t, Style::Interval)},
              {"rank", rank(table, t)},
              {"expressible", is_expressible(table, t)}};
}

}  // namespace

ExplorerService::ExplorerService(const std::string& skeleton_source, Budget budget)
    : budget_(budget) {
  load(skeleton_source);
}

ExplorerService::~ExplorerService() { stop(); }

std::shared_ptr<ExplorerService::Session> ExplorerService::session() const {
  std::lock_guard lock(session_mutex_);
  return session_;
}

void ExplorerService::load(const std::string& source) {
  auto fresh = std::make_shared<Session>();
  fresh->source = source;
  fresh->table = std::make_shared<const ClassTable>(parse_skeleton(source));
  std::lock_guard lock(session_mutex_);
  session_ = std::move(fresh);
}

HttpResponse ExplorerService::handle(const HttpRequest& request) {
  std::shared_ptr<Session> s = session();
  try {
    if (request.path == "/api/skeleton") {
      if (request.method == "POST") {
        try {
          load(request.body);
        } catch (const Error& e) {
          return error_response(422, e.what(), e.position());
        }
        return get_skeleton(*session());
      }
      if (request.method == "GET") return get_skeleton(*s);
    } else if (request.method == "GET") {
      if (request.path == "/api/graph") return get_graph(*s, request);
      if (request.path == "/api/subtype") return get_subtype(*s, request);
      if (request.path == "/api/embeddings") return get_embeddings(*s, request);
      if (request.path == "/api/census") return get_census(*s, request);
    }
    return error_response(404, "no route for " + request.method + " " + request.path);
  } catch (const RequestError& e) {
    return json_response(e.status, e.body);
  } catch (const Error& e) {
    return error_response(status_for(e), e.what(), e.position());
  }
}

HttpResponse ExplorerService::get_skeleton(const Session& s) const {
  const ClassTable& table = *s.table;
  Json classes = Json::array();
  for (const auto& decl : table.classes()) {
    Json params = Json::array();
    for (const auto& p : decl.params) {
      params.push_back({{"name", p.name},
                        {"upper", render(table, p.upper)},
                        {"lower", render(table, p.lower)}});
    }
    classes.push_back({{"name", decl.name},
                       {"superclass", decl.superclass.empty() ? Json(nullptr) : Json(decl.superclass)},
                       {"params", std::move(params)}});
  }
  return json_response(200, Json{{"source", s.source},
                                 {"classes", std::move(classes)},
                                 {"nodes_materialized", s.nodes_materialized.load()},
                                 {"budget", {{"max_nodes", budget_.max_nodes},
                                             {"max_level", budget_.max_level}}}});
}

namespace {

// Snapshot of the given level, expanding the cached sequence as needed.
SubtypingGraph level_graph(std::mutex& mutex, std::map<Mode, LevelSequence>& cache,
                                  const std::shared_ptr<const ClassTable>& table, Mode mode,
                                  std::size_t level, const Budget& budget,
                                  std::atomic<std::size_t>& counter) {
  std::lock_guard lock(mutex);
  auto it = cache.find(mode);
  if (it == cache.end()) {
    LevelSequence seq;
    seq.table = table;
    seq.mode = mode;
    it = cache.emplace(mode, std::move(seq)).first;
  }
  LevelSequence& seq = it->second;
  const std::size_t before = seq.levels.size();
  if (seq.levels.size() <= level) extend(seq, level, budget);
  for (std::size_t i = before; i < seq.levels.size(); ++i) counter += seq.levels[i].size();
  if (seq.levels.size() <= level) {
    const std::string reason = seq.budget_error.value_or("budget exceeded");
    throw RequestError{409, Json{{"error", reason},
                                 {"largest_level", seq.levels.empty() ? Json(nullptr)
                                                                      : Json(seq.deepest())}}};
  }
  return seq.levels[level];
}

}  // namespace

HttpResponse ExplorerService::get_graph(Session& s, const HttpRequest& r) {
  const ClassTable& table = *s.table;
  const std::size_t level = natural_param(r, "level", 0);
  const Mode mode = mode_param(r);
  TypeTerm low = TypeTerm::null();
  TypeTerm high = TypeTerm::object();
  if (const auto* v = param(r, "low"); v != nullptr && !v->empty()) low = parse_type(table, *v);
  if (const auto* v = param(r, "high"); v != nullptr && !v->empty()) high = parse_type(table, *v);
  SubtypingGraph g = level_graph(s.cache_mutex, s.cache, s.table, mode, level, budget_,
                                 s.nodes_materialized);
  SubtypingGraph view = window(g, low, high);
  Json body = Json::parse(export_graph(view, ExportFormat::Json));
  body["window"] = {{"low", renderings(table, low)}, {"high", renderings(table, high)}};
  return json_response(200, body);
}

HttpResponse ExplorerService::get_subtype(const Session& s, const HttpRequest& r) const {
  const ClassTable& table = *s.table;
  const std::string* lhs = param(r, "lhs");
  const std::string* rhs = param(r, "rhs");
  if (lhs == nullptr || rhs == nullptr) throw request_error(400, "lhs and rhs are required");
  TypeTerm a = parse_type(table, *lhs);
  TypeTerm b = parse_type(table, *rhs);
  return json_response(200, Json{{"result", is_subtype(table, a, b)},
                                 {"lhs", renderings(table, a)},
                                 {"rhs", renderings(table, b)}});
}

HttpResponse ExplorerService::get_embeddings(Session& s, const HttpRequest& r) {
  const ClassTable& table = *s.table;
  const std::size_t level = natural_param(r, "level", 0);
  const std::size_t hole = natural_param(r, "hole", 0);
  const Mode mode = mode_param(r);
  const std::string* cls = param(r, "class");
  if (cls == nullptr || cls->empty()) throw request_error(400, "class is required");
  const ClassDecl& decl = table.at(*cls);
  if (!decl.is_generic()) throw request_error(400, "class '" + *cls + "' is not generic");
  if (hole >= decl.arity()) throw request_error(400, "class '" + *cls + "' has no such hole");

  std::vector<TransformKind> kinds{TransformKind::Copy, TransformKind::Flip,
                                   TransformKind::Flatten};
  if (const auto* k = param(r, "kind"); k != nullptr && !k->empty()) {
    try {
      kinds = {parse_transform_kind(*k)};
    } catch (const Error& e) {
      throw request_error(400, e.what());
    }
  }
  SubtypingGraph next = level_graph(s.cache_mutex, s.cache, s.table, mode, level + 1, budget_,
                                    s.nodes_materialized);
  SubtypingGraph g = level_graph(s.cache_mutex, s.cache, s.table, mode, level, budget_,
                                 s.nodes_materialized);
  Json reports = Json::array();
  for (TransformKind kind : kinds) {
    EmbeddingReport rep = embedding_image(table, g, next, decl.name, hole, kind);
    Json pairs = Json::array();
    for (const auto& [src, img] : rep.mapping) {
      auto image_id = next.index_of(img);
      pairs.push_back({{"source_id", *g.index_of(src)},
                       {"image_id", image_id ? Json(*image_id) : Json(nullptr)},
                       {"source", renderings(table, src)},
                       {"image", renderings(table, img)}});
    }
    Json pruned = Json::array();
    for (const auto& t : rep.pruned) pruned.push_back(renderings(table, t));
    reports.push_back({{"kind", to_string(kind)},
                       {"verified", rep.verified},
                       {"injective", rep.injective},
                       {"images_present", rep.images_present},
                       {"law_holds", rep.law_holds},
                       {"pairs", std::move(pairs)},
                       {"pruned", std::move(pruned)}});
  }
  return json_response(200, Json{{"level", level},
                                 {"mode", to_string(mode)},
                                 {"class", decl.name},
                                 {"hole", hole},
                                 {"reports", std::move(reports)}});
}

HttpResponse ExplorerService::get_census(Session& s, const HttpRequest& r) {
  const std::size_t level = natural_param(r, "level", 0);
  const Mode mode = mode_param(r);
  SubtypingGraph g = level_graph(s.cache_mutex, s.cache, s.table, mode, level, budget_,
                                 s.nodes_materialized);
  Census c = census_by_distance(g);
  return json_response(200, Json{{"level", level},
                                 {"mode", to_string(mode)},
                                 {"census", c.counts},
                                 {"total", c.total()},
                                 {"nodes", g.size()},
                                 {"edges", g.edge_count()},
                                 {"longest_path", longest_path(g)}});
}

namespace {

HttpRequest to_request(const httplib::Request& req) {
  HttpRequest out;
  out.method = req.method;
  out.path = req.path;
  for (const auto& [k, v] : req.params) out.params[k] = v;
  out.body = req.body;
  return out;
}

}  // namespace

int ExplorerService::start(const std::string& host, int port) {
  stop();
  listener_ = std::make_unique<Listener>();
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    HttpResponse out = handle(to_request(req));
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  listener_->server.Get(R"(/api/.*)", handler);
  listener_->server.Post(R"(/api/.*)", handler);
  int bound = port == 0 ? listener_->server.bind_to_any_port(host)
                        : (listener_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    listener_.reset();
    throw Error(ErrorKind::InvalidArgument,
                "cannot bind " + host + ":" + std::to_string(port));
  }
  listener_->thread = std::thread([this] { listener_->server.listen_after_bind(); });
  listener_->server.wait_until_ready();
  return bound;
}

void ExplorerService::stop() {
  if (!listener_) return;
  listener_->server.stop();
  if (listener_->thread.joinable()) listener_->thread.join();
  listener_.reset();
}

void ExplorerService::serve(const std::string& host, int port) {
  start(host, port);
  listener_->thread.join();
}

}  // namespace fractal
