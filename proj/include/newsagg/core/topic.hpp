#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace newsagg::core {

// The eight classification tasks. RelatedToCovid is the gate: topic labels
// are only meaningful for articles where it is true.
enum class Topic {
    RelatedToCovid,
    InfectionStatus,
    Prevention,
    MedicalInformation,
    Economic,
    Education,
    ArtAndSport,
    Others,
};

inline constexpr std::size_t kTopicCount = 8;

inline constexpr std::array<Topic, kTopicCount> kAllTopics = {
    Topic::RelatedToCovid, Topic::InfectionStatus, Topic::Prevention,
    Topic::MedicalInformation, Topic::Economic, Topic::Education,
    Topic::ArtAndSport, Topic::Others,
};

// Everything except the gate.
inline constexpr std::array<Topic, kTopicCount - 1> kContentTopics = {
    Topic::InfectionStatus, Topic::Prevention, Topic::MedicalInformation,
    Topic::Economic, Topic::Education, Topic::ArtAndSport, Topic::Others,
};

class TopicError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

constexpr std::size_t index_of(Topic t) { return static_cast<std::size_t>(t); }
constexpr bool is_gate(Topic t) { return t == Topic::RelatedToCovid; }

// Canonical lowercase snake_case name, e.g. "medical_information".
std::string_view to_string(Topic t);

// Strict parse of a canonical name; throws TopicError otherwise.
Topic parse_topic(std::string_view name);
std::optional<Topic> try_parse_topic(std::string_view name);

// Questionnaire vocabulary ("economics and welfare", ...) onto the task set.
// Canonical names are accepted as well. Unknown phrases yield nullopt.
using QuestionnaireTopicMap = std::map<std::string, Topic, std::less<>>;
const QuestionnaireTopicMap& default_questionnaire_topic_map();
QuestionnaireTopicMap load_questionnaire_topic_map(const std::string& path);
std::optional<Topic> map_questionnaire_topic(std::string_view phrase,
                                             const QuestionnaireTopicMap& map);

// Fixed-size boolean table indexed by topic.
class TopicFlags {
public:
    TopicFlags() { flags_.fill(false); }

    bool operator[](Topic t) const { return flags_[index_of(t)]; }
    bool& operator[](Topic t) { return flags_[index_of(t)]; }

    bool gate() const { return flags_[index_of(Topic::RelatedToCovid)]; }
    bool any_content_topic() const;
    // Clears every content topic when the gate is false.
    TopicFlags gated() const;

    friend bool operator==(const TopicFlags&, const TopicFlags&) = default;

private:
    std::array<bool, kTopicCount> flags_{};
};

}  // namespace newsagg::core
