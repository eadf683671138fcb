#pragma once

#include "httplib.h"

#include "clusterbench/session.hpp"

namespace clusterbench {

/// Routes every /api/* GET and POST to svc.
inline void install_routes(httplib::Server& server, Service& svc) {
  auto handler = [&svc](const httplib::Request& req, httplib::Response& res) {
    Request r{req.method, req.path, req.body, {}};
    for (const auto& [k, v] : req.params) r.query[k] = v;
    Response out = svc.handle(r);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  server.Get(R"(/api/.*)", handler);
  server.Post(R"(/api/.*)", handler);
}

}  // namespace clusterbench
