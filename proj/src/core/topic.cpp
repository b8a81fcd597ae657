#include "newsagg/core/topic.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "newsagg/core/text.hpp"

namespace newsagg::core {

namespace {

constexpr std::array<std::string_view, kTopicCount> kNames = {
    "related_to_covid", "infection_status", "prevention", "medical_information",
    "economic",         "education",        "art_and_sport", "others",
};

}  // namespace

std::string_view to_string(Topic t) { return kNames[index_of(t)]; }

std::optional<Topic> try_parse_topic(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == name) return static_cast<Topic>(i);
    }
    return std::nullopt;
}

Topic parse_topic(std::string_view name) {
    if (auto t = try_parse_topic(name)) return *t;
    throw TopicError("unknown topic: '" + std::string(name) + "'");
}

const QuestionnaireTopicMap& default_questionnaire_topic_map() {
    static const QuestionnaireTopicMap map = {
        {"infection status", Topic::InfectionStatus},
        {"prevention and emergency declaration", Topic::Prevention},
        {"symptoms, medical treatment and tests", Topic::MedicalInformation},
        {"economics and welfare", Topic::Economic},
        {"school and online classes", Topic::Education},
        {"entertainment and sports", Topic::ArtAndSport},
        {"about rumours", Topic::Others},
        {"others", Topic::Others},
    };
    return map;
}

QuestionnaireTopicMap load_questionnaire_topic_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open topic map: " + path);
    auto doc = nlohmann::json::parse(in);
    QuestionnaireTopicMap map;
    for (auto& [phrase, topic] : doc.items()) {
        map.emplace(ascii_lower(trim(phrase)), parse_topic(topic.get<std::string>()));
    }
    return map;
}

std::optional<Topic> map_questionnaire_topic(std::string_view phrase,
                                             const QuestionnaireTopicMap& map) {
    auto key = ascii_lower(trim(phrase));
    if (auto t = try_parse_topic(key)) return t;
    if (auto it = map.find(key); it != map.end()) return it->second;
    return std::nullopt;
}

bool TopicFlags::any_content_topic() const {
    return std::any_of(kContentTopics.begin(), kContentTopics.end(),
                       [this](Topic t) { return (*this)[t]; });
}

TopicFlags TopicFlags::gated() const {
    if (gate()) return *this;
    return TopicFlags{};
}

}  // namespace newsagg::core
