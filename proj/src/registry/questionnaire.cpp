#include "newsagg/registry/questionnaire.hpp"

#include <fstream>
#include <ostream>

#include "newsagg/core/csv.hpp"
#include "newsagg/core/region.hpp"
#include "newsagg/core/text.hpp"

namespace newsagg::registry {

namespace {

std::optional<bool> parse_bool(std::string_view s) {
    auto v = core::ascii_lower(core::trim(s));
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    return std::nullopt;
}

}  // namespace

QuestionnaireParse parse_questionnaire_csv(std::istream& in,
                                           const core::QuestionnaireTopicMap& topic_map) {
    auto table = core::read_csv(in);
    if (table.empty()) throw RegistryError("questionnaire CSV is empty");
    if (core::join(table.front(), ",") != kQuestionnaireHeader) {
        throw RegistryError("unexpected questionnaire header: '" + core::join(table.front(), ",") +
                            "', expected '" + std::string(kQuestionnaireHeader) + "'");
    }

    QuestionnaireParse out;
    for (std::size_t i = 1; i < table.size(); ++i) {
        const auto& cells = table[i];
        auto reject = [&](std::string msg) { out.diagnostics.push_back({i, std::move(msg)}); };
        if (cells.size() != 6) {
            reject("expected 6 fields, got " + std::to_string(cells.size()));
            continue;
        }
        QuestionnaireRow row;
        row.website = std::string(core::trim(cells[0]));
        auto country = core::normalize_region(cells[1]);
        if (!country) {
            reject("unsupported country '" + cells[1] + "'");
            continue;
        }
        row.country = *country;
        auto primary = parse_bool(cells[2]);
        if (!primary) {
            reject("primary must be true/false, got '" + cells[2] + "'");
            continue;
        }
        row.primary = *primary;
        row.reason = std::string(core::trim(cells[3]));
        bool topics_ok = true;
        for (const auto& phrase : core::split(cells[4], ';')) {
            if (core::trim(phrase).empty()) continue;
            auto topic = core::map_questionnaire_topic(phrase, topic_map);
            if (!topic) {
                reject("unknown topic '" + phrase + "'");
                topics_ok = false;
                break;
            }
            row.topics.push_back(*topic);
        }
        if (!topics_ok) continue;
        row.worker_id = std::string(core::trim(cells[5]));
        out.rows.push_back(std::move(row));
    }
    return out;
}

QuestionnaireParse parse_questionnaire_csv_file(const std::string& path,
                                                const core::QuestionnaireTopicMap& topic_map) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RegistryError("cannot open " + path);
    return parse_questionnaire_csv(in, topic_map);
}

void write_questionnaire_csv(std::ostream& out, const std::vector<QuestionnaireRow>& rows) {
    out << kQuestionnaireHeader << '\n';
    for (const auto& r : rows) {
        std::vector<std::string> topics;
        for (auto t : r.topics) topics.emplace_back(core::to_string(t));
        core::write_csv_row(out, {r.website, r.country, r.primary ? "true" : "false", r.reason,
                                  core::join(topics, ";"), r.worker_id});
    }
}

}  // namespace newsagg::registry
