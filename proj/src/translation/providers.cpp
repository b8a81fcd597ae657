#include "newsagg/translation/providers.hpp"

#include <httplib.h>

#include <json.hpp>
#include <sstream>

#include "newsagg/core/jsonl.hpp"
#include "newsagg/core/text.hpp"

namespace newsagg::translation {

using nlohmann::json;

DictionaryProvider DictionaryProvider::from_file(const std::string& path) {
    auto j = core::read_json_file(path);
    Table table;
    try {
        table = j.get<Table>();
    } catch (const json::exception& e) {
        throw ProviderError("dictionary " + path + " must map language -> {source: translation}: " + e.what());
    }
    return DictionaryProvider(std::move(table));
}

std::string DictionaryProvider::translate(const std::string&, const std::string& target_lang,
                                          const std::string& text) {
    auto lang = table_.find(target_lang);
    if (lang == table_.end()) return text;
    const auto& dict = lang->second;
    if (auto it = dict.find(text); it != dict.end()) return it->second;

    std::vector<std::string> out;
    std::istringstream words(text);
    std::string w;
    while (words >> w) {
        auto it = dict.find(w);
        out.push_back(it == dict.end() ? w : it->second);
    }
    return core::join(out, " ");
}

HttpProvider::HttpProvider(std::string base_url, int timeout_ms)
    : base_url_(std::move(base_url)), timeout_ms_(timeout_ms) {
    while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

std::string HttpProvider::translate(const std::string& source_lang, const std::string& target_lang,
                                    const std::string& text) {
    httplib::Client client(base_url_);
    auto t = std::chrono::milliseconds(timeout_ms_);
    client.set_connection_timeout(t);
    client.set_read_timeout(t);
    client.set_write_timeout(t);
    json body{{"source_lang", source_lang}, {"target_lang", target_lang}, {"text", text}};
    auto res = client.Post("/translate", body.dump(), "application/json");
    if (!res) throw ProviderError("translation request failed: " + httplib::to_string(res.error()));
    if (res->status != 200) throw ProviderError("translation service returned HTTP " + std::to_string(res->status));
    try {
        return json::parse(res->body).at("text").get<std::string>();
    } catch (const json::exception& e) {
        throw ProviderError(std::string("malformed translation response: ") + e.what());
    }
}

std::unique_ptr<TranslationProvider> make_provider(const std::string& spec, int timeout_ms) {
    if (spec == "identity") return std::make_unique<IdentityProvider>();
    if (spec.rfind("dict:", 0) == 0) return std::make_unique<DictionaryProvider>(DictionaryProvider::from_file(spec.substr(5)));
    if (spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0) {
        return std::make_unique<HttpProvider>(spec, timeout_ms);
    }
    throw ProviderError("unknown provider \"" + spec + "\" (expected identity, dict:<path> or an http URL)");
}

}  // namespace newsagg::translation
