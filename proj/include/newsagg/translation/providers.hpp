#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

namespace newsagg::translation {

class ProviderError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One synchronous request/response per text segment. Implementations throw
// ProviderError on transport or service failure and must be callable from
// several threads at once.
class TranslationProvider {
public:
    virtual ~TranslationProvider() = default;
    virtual std::string translate(const std::string& source_lang, const std::string& target_lang,
                                  const std::string& text) = 0;
};

class IdentityProvider final : public TranslationProvider {
public:
    std::string translate(const std::string&, const std::string&, const std::string& text) override {
        return text;
    }
};

// target language -> (source text -> translation). A segment found verbatim
// is replaced whole; otherwise each whitespace-separated token is looked up
// and unknown tokens pass through.
class DictionaryProvider final : public TranslationProvider {
public:
    using Table = std::map<std::string, std::map<std::string, std::string>>;
    explicit DictionaryProvider(Table table) : table_(std::move(table)) {}
    static DictionaryProvider from_file(const std::string& path);

    std::string translate(const std::string& source_lang, const std::string& target_lang,
                          const std::string& text) override;

private:
    Table table_;
};

// POST {base_url}/translate with {source_lang, target_lang, text} -> {text}.
class HttpProvider final : public TranslationProvider {
public:
    HttpProvider(std::string base_url, int timeout_ms = 30000);
    std::string translate(const std::string& source_lang, const std::string& target_lang,
                          const std::string& text) override;

private:
    std::string base_url_;
    int timeout_ms_;
};

// Counts calls made through it.
class CountingProvider final : public TranslationProvider {
public:
    explicit CountingProvider(TranslationProvider& inner) : inner_(inner) {}
    std::string translate(const std::string& source_lang, const std::string& target_lang,
                          const std::string& text) override {
        ++calls_;
        return inner_.translate(source_lang, target_lang, text);
    }
    std::size_t calls() const { return calls_.load(); }
    void reset() { calls_ = 0; }

private:
    TranslationProvider& inner_;
    std::atomic<std::size_t> calls_{0};
};

// "identity", "dict:<path>" or an http(s) base URL.
std::unique_ptr<TranslationProvider> make_provider(const std::string& spec, int timeout_ms = 30000);

}  // namespace newsagg::translation
