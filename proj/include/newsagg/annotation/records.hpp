#pragma once

#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "newsagg/core/article.hpp"
#include "newsagg/core/topic.hpp"

namespace newsagg::annotation {

class AnnotationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// One worker's judgment of one article.
struct AnnotationRecord {
    std::string article_id;
    std::string worker_id;
    bool related = false;
    bool useful = false;
    bool fluent = false;
    std::set<core::Topic> topics;  // content topics only

    friend bool operator==(const AnnotationRecord&, const AnnotationRecord&) = default;
};

// Throws AnnotationError on empty ids or a gate topic in `topics`.
void validate_record(const AnnotationRecord& r);

nlohmann::json to_json(const AnnotationRecord& r);
AnnotationRecord record_from_json(const nlohmann::json& j);

inline constexpr const char* kAnnotationHeader = "article_id,worker_id,related,useful,fluent,topics";

struct RecordDiagnostic {
    std::size_t row = 0;  // 1-based data row
    std::string message;
};

struct AnnotationParse {
    std::vector<AnnotationRecord> records;
    std::vector<RecordDiagnostic> diagnostics;
};

// CSV with kAnnotationHeader; booleans as 1/0, true/false or yes/no, topics
// ';'-joined canonical names. Bad rows become diagnostics.
AnnotationParse parse_annotations_csv(std::istream& in);
AnnotationParse parse_annotations_csv_file(const std::string& path);
void write_annotations_csv(std::ostream& out, const std::vector<AnnotationRecord>& records);

struct TaskSlot {
    std::string article_id;
    int slot = 0;  // 0-based
    friend bool operator==(const TaskSlot&, const TaskSlot&) = default;
};

// k slots per article, article order preserved. Throws AnnotationError if
// k < 1.
std::vector<TaskSlot> build_tasks(const std::vector<core::Article>& articles, int k);

// Blank annotation sheet: one kAnnotationHeader row per slot with the
// article id filled in and the worker column holding "slot-<n>".
void write_task_sheet(std::ostream& out, const std::vector<TaskSlot>& tasks);

nlohmann::json to_json(const TaskSlot& t);

}  // namespace newsagg::annotation
