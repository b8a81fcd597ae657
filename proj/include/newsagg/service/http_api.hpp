#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include <httplib.h>

#include "newsagg/core/time.hpp"
#include "newsagg/service/store.hpp"

namespace newsagg::service {

struct ApiConfig {
    // Required in X-Api-Token for POST /api/articles; empty disables the route.
    std::string api_token;
    // Served at "/" when set (the browser UI bundle).
    std::optional<std::string> static_dir;
    std::function<core::Timestamp()> now = core::now_utc;
};

// Routes:
//   GET  /api/articles?country=&topic=&from=&to=&page=&page_size=
//   GET  /api/articles/{id}
//   GET  /api/stats
//   POST /api/annotations
//   POST /api/articles          (X-Api-Token)
// Errors are {code, message} with a matching HTTP status.
void register_routes(httplib::Server& server, ArticleStore& store, ApiConfig config);

// Builds the query from URL parameters. Throws QueryError on malformed
// numbers or dates. A bare "YYYY-MM-DD" in `to` covers that whole day.
ArticleQuery parse_article_query(const httplib::Params& params);

}  // namespace newsagg::service
