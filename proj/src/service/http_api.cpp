#include "newsagg/service/http_api.hpp"

#include <charconv>

#include "newsagg/annotation/records.hpp"

namespace newsagg::service {

using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string code, std::string message) {
    send_json(res, status, json{{"code", std::move(code)}, {"message", std::move(message)}});
}

std::optional<std::string> param(const httplib::Params& params, const char* name) {
    auto it = params.find(name);
    if (it == params.end()) return std::nullopt;
    return it->second;
}

int parse_int(const std::string& s, const char* name) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw QueryError(std::string(name) + " must be an integer, got '" + s + "'");
    }
    return v;
}

core::Timestamp parse_time(const std::string& s, const char* name) {
    try {
        return core::parse_rfc3339(s);
    } catch (const core::TimeParseError& e) {
        throw QueryError(std::string(name) + ": " + e.what());
    }
}

}  // namespace

ArticleQuery parse_article_query(const httplib::Params& params) {
    ArticleQuery q;
    q.country = param(params, "country");
    q.topic = param(params, "topic");
    if (auto v = param(params, "from"); v && !v->empty()) q.from = parse_time(*v, "from");
    if (auto v = param(params, "to"); v && !v->empty()) {
        q.to = parse_time(*v, "to");
        if (v->size() == 10) *q.to += std::chrono::days(1) - std::chrono::milliseconds(1);
    }
    if (auto v = param(params, "page")) q.page = parse_int(*v, "page");
    if (auto v = param(params, "page_size")) q.page_size = parse_int(*v, "page_size");
    return q;
}

void register_routes(httplib::Server& server, ArticleStore& store, ApiConfig config) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type, X-Api-Token"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get("/api/articles", [&store](const httplib::Request& req, httplib::Response& res) {
        try {
            send_json(res, 200, to_json(store.list_articles(parse_article_query(req.params))));
        } catch (const QueryError& e) {
            send_error(res, 400, "bad_request", e.what());
        }
    });

    server.Get(R"(/api/articles/([^/]+))", [&store](const httplib::Request& req, httplib::Response& res) {
        auto id = req.matches[1].str();
        auto article = store.get_article(id);
        if (!article) return send_error(res, 404, "not_found", "unknown article " + id);
        send_json(res, 200, detail_json(*article));
    });

    server.Get("/api/stats", [&store, now = config.now](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, to_json(store.get_stats(now())));
    });

    server.Post("/api/annotations", [&store](const httplib::Request& req, httplib::Response& res) {
        annotation::AnnotationRecord record;
        try {
            record = annotation::record_from_json(json::parse(req.body));
        } catch (const json::exception& e) {
            return send_error(res, 400, "bad_request", std::string("malformed JSON: ") + e.what());
        } catch (const annotation::AnnotationError& e) {
            return send_error(res, 422, "invalid", e.what());
        }
        auto result = store.submit_annotation(record);
        switch (result.status) {
            case SubmitStatus::Accepted: {
                json body{{"status", "accepted"}, {"article_id", record.article_id}, {"worker_id", record.worker_id}};
                body["labels"] = result.labels ? core::to_json(*result.labels) : json(nullptr);
                return send_json(res, 201, body);
            }
            case SubmitStatus::NotFound: return send_error(res, 404, "not_found", result.message);
            case SubmitStatus::Conflict: return send_error(res, 409, "conflict", result.message);
            case SubmitStatus::Invalid: return send_error(res, 422, "invalid", result.message);
        }
    });

    server.Post("/api/articles", [&store, token = config.api_token](const httplib::Request& req,
                                                                      httplib::Response& res) {
        if (token.empty()) return send_error(res, 403, "forbidden", "article upload is disabled");
        if (req.get_header_value("X-Api-Token") != token) {
            return send_error(res, 401, "unauthorized", "missing or wrong X-Api-Token");
        }
        std::vector<core::Article> batch;
        try {
            auto body = json::parse(req.body);
            const auto& list = body.is_object() ? body.at("articles") : body;
            if (!list.is_array()) return send_error(res, 400, "bad_request", "expected an array of articles");
            for (const auto& a : list) batch.push_back(core::article_from_json(a));
        } catch (const std::exception& e) {
            return send_error(res, 400, "bad_request", e.what());
        }
        auto result = store.upsert_articles(batch);
        json diags = json::array();
        for (const auto& d : result.diagnostics) {
            diags.push_back({{"index", d.index}, {"article_id", d.article_id}, {"message", d.message}});
        }
        send_json(res, 200, json{{"changed", result.changed}, {"diagnostics", diags}});
    });

    if (config.static_dir) server.set_mount_point("/", *config.static_dir);
}

}  // namespace newsagg::service
