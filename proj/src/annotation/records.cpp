#include "newsagg/annotation/records.hpp"

#include <fstream>
#include <ostream>

#include "newsagg/core/csv.hpp"
#include "newsagg/core/text.hpp"

namespace newsagg::annotation {

using nlohmann::json;

namespace {

std::optional<bool> parse_bool(std::string_view s) {
    auto v = core::ascii_lower(core::trim(s));
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    return std::nullopt;
}

std::string topics_cell(const std::set<core::Topic>& topics) {
    std::vector<std::string> names;
    for (auto t : topics) names.emplace_back(core::to_string(t));
    return core::join(names, ";");
}

}  // namespace

void validate_record(const AnnotationRecord& r) {
    if (r.article_id.empty()) throw AnnotationError("annotation without article_id");
    if (r.worker_id.empty()) throw AnnotationError("annotation for " + r.article_id + " without worker_id");
    if (r.topics.count(core::Topic::RelatedToCovid)) {
        throw AnnotationError("related_to_covid is not a selectable topic");
    }
}

json to_json(const AnnotationRecord& r) {
    std::vector<std::string> topics;
    for (auto t : r.topics) topics.emplace_back(core::to_string(t));
    return json{{"article_id", r.article_id}, {"worker_id", r.worker_id}, {"related", r.related},
                {"useful", r.useful},         {"fluent", r.fluent},       {"topics", topics}};
}

AnnotationRecord record_from_json(const json& j) {
    AnnotationRecord r;
    try {
        r.article_id = j.at("article_id").get<std::string>();
        r.worker_id = j.at("worker_id").get<std::string>();
        r.related = j.at("related").get<bool>();
        r.useful = j.value("useful", false);
        r.fluent = j.value("fluent", false);
        for (const auto& name : j.value("topics", std::vector<std::string>{})) {
            r.topics.insert(core::parse_topic(name));
        }
    } catch (const json::exception& e) {
        throw AnnotationError(std::string("malformed annotation: ") + e.what());
    } catch (const core::TopicError& e) {
        throw AnnotationError(e.what());
    }
    validate_record(r);
    return r;
}

AnnotationParse parse_annotations_csv(std::istream& in) {
    auto table = core::read_csv(in);
    if (table.empty()) throw AnnotationError("annotation CSV is empty");
    if (core::join(table.front(), ",") != kAnnotationHeader) {
        throw AnnotationError("unexpected annotation header: '" + core::join(table.front(), ",") +
                              "', expected '" + kAnnotationHeader + "'");
    }
    AnnotationParse out;
    for (std::size_t i = 1; i < table.size(); ++i) {
        const auto& cells = table[i];
        auto reject = [&](std::string msg) { out.diagnostics.push_back({i, std::move(msg)}); };
        if (cells.size() != 6) {
            reject("expected 6 fields, got " + std::to_string(cells.size()));
            continue;
        }
        AnnotationRecord r;
        r.article_id = std::string(core::trim(cells[0]));
        r.worker_id = std::string(core::trim(cells[1]));
        auto related = parse_bool(cells[2]);
        auto useful = parse_bool(cells[3]);
        auto fluent = parse_bool(cells[4]);
        if (!related || !useful || !fluent) {
            reject("related/useful/fluent must be boolean");
            continue;
        }
        r.related = *related;
        r.useful = *useful;
        r.fluent = *fluent;
        try {
            for (const auto& name : core::split(cells[5], ';')) {
                if (core::trim(name).empty()) continue;
                r.topics.insert(core::parse_topic(core::trim(name)));
            }
            validate_record(r);
        } catch (const std::invalid_argument& e) {
            reject(e.what());
            continue;
        }
        out.records.push_back(std::move(r));
    }
    return out;
}

AnnotationParse parse_annotations_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw AnnotationError("cannot open " + path);
    return parse_annotations_csv(in);
}

void write_annotations_csv(std::ostream& out, const std::vector<AnnotationRecord>& records) {
    out << kAnnotationHeader << "\n";
    for (const auto& r : records) {
        core::write_csv_row(out, {r.article_id, r.worker_id, r.related ? "1" : "0", r.useful ? "1" : "0",
                                  r.fluent ? "1" : "0", topics_cell(r.topics)});
    }
}

std::vector<TaskSlot> build_tasks(const std::vector<core::Article>& articles, int k) {
    if (k < 1) throw AnnotationError("workers per article must be >= 1");
    std::vector<TaskSlot> tasks;
    tasks.reserve(articles.size() * static_cast<std::size_t>(k));
    for (const auto& a : articles) {
        for (int s = 0; s < k; ++s) tasks.push_back({a.id, s});
    }
    return tasks;
}

void write_task_sheet(std::ostream& out, const std::vector<TaskSlot>& tasks) {
    out << kAnnotationHeader << "\n";
    for (const auto& t : tasks) {
        core::write_csv_row(out, {t.article_id, "slot-" + std::to_string(t.slot), "", "", "", ""});
    }
}

json to_json(const TaskSlot& t) { return json{{"article_id", t.article_id}, {"slot", t.slot}}; }

}  // namespace newsagg::annotation
