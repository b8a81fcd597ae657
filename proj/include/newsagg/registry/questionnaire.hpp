#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "newsagg/core/topic.hpp"

namespace newsagg::registry {

class RegistryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One crowdworker's answer naming one trusted website.
struct QuestionnaireRow {
    std::string website;
    std::string country;  // region code
    bool primary = false;
    std::string reason;
    std::vector<core::Topic> topics;
    std::string worker_id;

    friend bool operator==(const QuestionnaireRow&, const QuestionnaireRow&) = default;
};

struct RowDiagnostic {
    std::size_t row = 0;  // 1-based data row (header excluded)
    std::string message;
};

struct QuestionnaireParse {
    std::vector<QuestionnaireRow> rows;
    std::vector<RowDiagnostic> diagnostics;
};

inline constexpr std::string_view kQuestionnaireHeader =
    "website,country,primary,reason,topics,worker_id";

// Parses the questionnaire CSV export. The header must match
// kQuestionnaireHeader exactly; topics are ';'-separated and may use either
// canonical task names or the questionnaire phrases. Bad rows are skipped
// with a diagnostic.
QuestionnaireParse parse_questionnaire_csv(std::istream& in,
                                           const core::QuestionnaireTopicMap& topic_map =
                                               core::default_questionnaire_topic_map());
QuestionnaireParse parse_questionnaire_csv_file(const std::string& path,
                                                const core::QuestionnaireTopicMap& topic_map =
                                                    core::default_questionnaire_topic_map());

void write_questionnaire_csv(std::ostream& out, const std::vector<QuestionnaireRow>& rows);

}  // namespace newsagg::registry
