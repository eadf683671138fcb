#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "clusterbench/clusterauto.hpp"
#include "clusterbench/invariants.hpp"
#include "clusterbench/serialize.hpp"

namespace clusterbench {

/// How the initial seed was built: a Dynkin type with level l (l = 0 means
/// the bare Dynkin quiver), optionally specialized to its principal part,
/// or an explicit quiver.
struct SessionDescriptor {
  std::string type = "A";
  int rank = 2;
  int level = 0;
  bool principal = false;
  std::optional<Quiver> raw;

  DynkinType dynkin() const { return DynkinType::parse(type, rank); }
};

inline Seed build_initial_seed(const SessionDescriptor& d) {
  if (d.raw) return d.principal ? specialize(initial_seed(*d.raw)) : initial_seed(*d.raw);
  const DynkinType t = d.dynkin();
  if (d.level < 0) throw LevelError("level must be >= 0");
  if (d.level == 0) return initial_seed(dynkin_quiver(t));
  Seed s = initial_seed(build_hl_quiver(t, d.level));
  return d.principal ? specialize(s) : s;
}

inline json to_json(const SessionDescriptor& d) {
  json j;
  if (d.raw) {
    j["quiver"] = to_json(*d.raw);
  } else {
    j["type"] = d.type;
    j["rank"] = d.rank;
    j["l"] = d.level > 0 ? json(d.level) : json();
  }
  j["principal"] = d.principal;
  return j;
}

/// Accepts {"type", "rank", "l"?, "principal"?} or {"quiver": {...}, "principal"?}.
inline SessionDescriptor descriptor_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("descriptor must be a JSON object");
  SessionDescriptor d;
  d.principal = j.value("principal", false);
  if (j.contains("quiver")) {
    d.raw = quiver_from_json(j.at("quiver"));
    return d;
  }
  d.type = j.at("type").get<std::string>();
  d.rank = j.at("rank").get<int>();
  if (j.contains("l") && !j.at("l").is_null()) d.level = j.at("l").get<int>();
  d.dynkin();  // validates
  return d;
}

/// Arrows of `after` compared with `before`, for highlighting a mutation.
struct ArrowDiff {
  std::vector<Arrow> inserted, removed, flipped;  // flipped lists the arrow as it is after
};

inline ArrowDiff arrow_diff(const Quiver& before, const Quiver& after) {
  auto key = [](const Arrow& a) { return std::pair{a.src, a.dst}; };
  std::map<std::pair<int, int>, int> b, a;
  for (const auto& x : before.arrows()) b[key(x)] = x.mult;
  for (const auto& x : after.arrows()) a[key(x)] = x.mult;
  ArrowDiff d;
  for (const auto& [k, m] : a) {
    auto same = b.find(k);
    if (same != b.end() && same->second == m) continue;
    if (b.count({k.second, k.first}) && b.at({k.second, k.first}) == m && !a.count({k.second, k.first}))
      d.flipped.push_back({k.first, k.second, m});
    else
      d.inserted.push_back({k.first, k.second, m});
  }
  for (const auto& [k, m] : b) {
    auto same = a.find(k);
    if (same != a.end() && same->second == m) continue;
    if (a.count({k.second, k.first}) && a.at({k.second, k.first}) == m && !b.count({k.second, k.first})) continue;
    d.removed.push_back({k.first, k.second, m});
  }
  return d;
}

inline json to_json(const std::vector<Arrow>& arrows) {
  json out = json::array();
  for (const auto& a : arrows) out.push_back({{"src", a.src}, {"dst", a.dst}, {"mult", a.mult}});
  return out;
}

inline json to_json(const ExchangeStep& s) {
  return {{"vertex", s.vertex},
          {"positive", to_json(s.positive)},
          {"negative", to_json(s.negative)},
          {"old_var", to_json(s.old_var)},
          {"new_var", to_json(s.new_var)}};
}

/// Current seed plus the mutation history that produced it from the initial
/// descriptor.
class SessionState {
 public:
  SessionState() : SessionState(SessionDescriptor{}) {}
  explicit SessionState(SessionDescriptor d) : descriptor_(std::move(d)) {
    initial_ = build_initial_seed(descriptor_);
    current_ = initial_;
  }

  const SessionDescriptor& descriptor() const { return descriptor_; }
  const Seed& initial() const { return initial_; }
  const Seed& current() const { return current_; }
  const std::vector<int>& history() const { return history_; }

  ExchangeStep mutate(int vertex) {
    auto [next, step] = mutate_seed_detailed(current_, vertex);
    current_ = std::move(next);
    history_.push_back(vertex);
    return step;
  }

  /// Drops the last mutation; false when the history is empty.
  bool undo() {
    if (history_.empty()) return false;
    current_ = mutate_seed(current_, history_.back());
    history_.pop_back();
    return true;
  }

  Seed replay() const {
    Seed s = initial_;
    for (int v : history_) s = mutate_seed(s, v);
    return s;
  }

  json to_json() const {
    return {{"descriptor", clusterbench::to_json(descriptor_)},
            {"history", history_},
            {"seed", clusterbench::to_json(current_)}};
  }

  static SessionState from_json(const json& j) {
    SessionState s(descriptor_from_json(j.at("descriptor")));
    for (int v : j.at("history").get<std::vector<int>>()) s.mutate(v);
    return s;
  }

 private:
  SessionDescriptor descriptor_;
  Seed initial_;
  Seed current_;
  std::vector<int> history_;
};

struct Request {
  std::string method;
  std::string path;
  std::string body;
  std::map<std::string, std::string> query;
};

struct Response {
  int status = 200;
  json body;
};

/// JSON API over one SessionState. State changes take the writer lock and
/// publish a new immutable snapshot; reads work on the snapshot they load.
class Service {
 public:
  Service() : state_(std::make_shared<const SessionState>()) {}
  explicit Service(SessionDescriptor d) : state_(std::make_shared<const SessionState>(std::move(d))) {}

  std::shared_ptr<const SessionState> snapshot() const {
    std::lock_guard lock(snapshot_mutex_);
    return state_;
  }

  Response handle(const Request& r) {
    try {
      if (r.method == "GET" && r.path == "/api/seed") return ok(seed_view(*snapshot()));
      if (r.method == "POST" && r.path == "/api/reset") return reset(parse_body(r.body));
      if (r.method == "POST" && r.path == "/api/mutate") return mutate(parse_body(r.body));
      if (r.method == "POST" && r.path == "/api/undo") return undo();
      if (r.method == "GET" && r.path == "/api/census") return census_view(*snapshot(), budget_param(r));
      if (r.method == "GET" && r.path == "/api/report") return report_view(*snapshot());
      if (r.method == "GET" && r.path == "/api/autgroup") return autgroup_view(*snapshot(), budget_param(r));
      return error(404, "no route for " + r.method + " " + r.path);
    } catch (const MutationError& e) {
      return error(422, e.what());
    } catch (const json::exception& e) {
      return error(400, std::string("malformed request: ") + e.what());
    } catch (const ParseError& e) {
      return error(400, e.what());
    } catch (const TypeError& e) {
      return error(400, e.what());
    } catch (const LevelError& e) {
      return error(400, e.what());
    } catch (const QuiverError& e) {
      return error(400, e.what());
    } catch (const IncompleteError& e) {
      return error(422, e.what());
    } catch (const Error& e) {
      return error(500, e.what());
    }
  }

 private:
  static Response ok(json body) { return {200, std::move(body)}; }
  static Response error(int status, const std::string& message) {
    return {status, {{"error", message}, {"status", status}}};
  }

  static json parse_body(const std::string& body) {
    if (body.empty()) return json::object();
    return json::parse(body);
  }

  static std::size_t budget_param(const Request& r) {
    auto it = r.query.find("budget");
    if (it == r.query.end()) return kDefaultBudget;
    std::size_t pos = 0;
    long long b = -1;
    try {
      b = std::stoll(it->second, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != it->second.size() || b < 1) throw ParseError("budget must be a positive integer");
    return static_cast<std::size_t>(b);
  }

  void publish(std::shared_ptr<const SessionState> s) {
    std::lock_guard lock(snapshot_mutex_);
    state_ = std::move(s);
  }

  static json seed_view(const SessionState& s) {
    json j = s.to_json();
    j["replay_consistent"] = clusterbench::to_json(s.replay()) == j["seed"];
    return j;
  }

  Response reset(const json& body) {
    std::lock_guard lock(writer_mutex_);
    auto next = std::make_shared<const SessionState>(descriptor_from_json(body));
    publish(next);
    return ok(seed_view(*next));
  }

  Response mutate(const json& body) {
    if (!body.is_object() || !body.contains("vertex")) throw ParseError("body must be {\"vertex\": index or label}");
    std::lock_guard lock(writer_mutex_);
    auto cur = snapshot();
    const Quiver& q = cur->current().quiver();
    int v = -1;
    const json& jv = body.at("vertex");
    if (jv.is_number_integer()) {
      v = jv.get<int>();
    } else if (jv.is_string()) {
      auto idx = q.index_of(jv.get<std::string>());
      if (!idx) throw ParseError("unknown vertex label '" + jv.get<std::string>() + "'");
      v = *idx;
    } else {
      throw ParseError("vertex must be an integer or a label");
    }
    if (v < 0 || v >= q.size()) throw ParseError("vertex " + std::to_string(v) + " out of range");
    auto next = std::make_shared<SessionState>(*cur);
    const ExchangeStep step = next->mutate(v);
    const ArrowDiff diff = arrow_diff(q, next->current().quiver());
    publish(next);
    json j = seed_view(*next);
    j["step"] = clusterbench::to_json(step);
    j["changes"] = {{"inserted", to_json(diff.inserted)},
                    {"removed", to_json(diff.removed)},
                    {"flipped", to_json(diff.flipped)}};
    return ok(std::move(j));
  }

  Response undo() {
    std::lock_guard lock(writer_mutex_);
    auto next = std::make_shared<SessionState>(*snapshot());
    const bool undone = next->undo();
    publish(next);
    json j = seed_view(*next);
    j["undone"] = undone;
    return ok(std::move(j));
  }

  static Response census_view(const SessionState& s, std::size_t budget) {
    const ExchangeGraph g = exchange_graph(s.current(), budget);
    json j;
    j["complete"] = g.complete();
    j["budget"] = budget;
    if (!g.complete()) {
      j["clusters_found"] = g.size();
      return ok(std::move(j));
    }
    j["census"] = to_json(census(g));
    if (s.current().quiver().n_frozen() > 0) j["principal_census"] = to_json(census(specialize(g)));
    j["graph"] = to_json(g);
    return ok(std::move(j));
  }

  static Response report_view(const SessionState& s) {
    const auto& d = s.descriptor();
    if (d.raw) return error(422, "invariant reports need a Dynkin descriptor");
    const int l = std::max(d.level, 1);
    json j = to_json(invariant_report(d.dynkin(), l));
    if (d.level == 0) j["note"] = "bare Dynkin quiver reported as the principal part of level 1";
    return ok(std::move(j));
  }

  static Response autgroup_view(const SessionState& s, std::size_t budget) {
    const auto r = compute_aut_group(s.current(), false, budget);
    json j = to_json(r.group, r.identified);
    j["clusters"] = r.census.cluster_count;
    j["variables"] = r.census.variable_count;
    return ok(std::move(j));
  }

  mutable std::mutex snapshot_mutex_;
  std::mutex writer_mutex_;
  std::shared_ptr<const SessionState> state_;
};

}  // namespace clusterbench
