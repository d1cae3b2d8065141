#include "graphrag/http_providers.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "graphrag/errors.hpp"

namespace graphrag {

using nlohmann::json;

HttpClient::HttpClient(const ProviderConfig& config)
    : endpoint_(config.endpoint),
      timeout_ms_(config.timeout_ms),
      max_retries_(config.max_retries) {
    if (endpoint_.empty()) throw_config("http provider requires an endpoint");
    if (!config.credentials_env.empty()) {
        if (const char* token = std::getenv(config.credentials_env.c_str())) {
            bearer_token_ = token;
        }
    }
}

std::string HttpClient::post_json(const std::string& path, const std::string& body) const {
    httplib::Client client(endpoint_);
    client.set_connection_timeout(0, timeout_ms_ * 1000);
    client.set_read_timeout(timeout_ms_ / 1000, (timeout_ms_ % 1000) * 1000);
    httplib::Headers headers;
    if (!bearer_token_.empty()) {
        headers.emplace("Authorization", "Bearer " + bearer_token_);
    }

    std::string last_error;
    int backoff_ms = 100;
    const int attempts = std::max(1, max_retries_);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
            backoff_ms *= 2;
        }
        auto res = client.Post(path, headers, body, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 500) {
            last_error = "server error " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            throw_provider("http " + path + " failed with status " + std::to_string(res->status));
        }
        return res->body;
    }
    throw_provider("http " + path + " failed after " + std::to_string(attempts) +
                   " attempts: " + last_error);
}

namespace {

json parse_response(const std::string& body, const std::string& what) {
    json parsed = json::parse(body, nullptr, false);
    if (parsed.is_discarded()) throw_provider(what + ": malformed JSON response");
    return parsed;
}

}  // namespace

HttpEmbeddingProvider::HttpEmbeddingProvider(const ProviderConfig& config)
    : client_(config), model_(config.model), dim_(config.dim) {}

Embedding HttpEmbeddingProvider::request(const std::string& input, const std::string& modality) {
    json req{{"model", model_}, {"input", json::array({input})}};
    if (modality != "text") req["modality"] = modality;
    const json res = parse_response(client_.post_json("/v1/embeddings", req.dump()), "embeddings");
    if (!res.contains("data") || res["data"].empty()) {
        throw_provider("embeddings: response carries no data");
    }
    Embedding emb;
    for (const auto& v : res["data"][0]["embedding"]) emb.values.push_back(v.get<double>());
    if (emb.values.empty()) throw_provider("embeddings: empty vector");
    dim_ = emb.dim();
    return emb;
}

Embedding HttpEmbeddingProvider::embed_text(const std::string& text) {
    return request(text, "text");
}

Embedding HttpEmbeddingProvider::embed_image(const std::string& image_ref) {
    if (image_ref.empty()) throw_data("embed_image: unresolvable image ref (empty)");
    return request(image_ref, "image");
}

HttpGenerationProvider::HttpGenerationProvider(const ProviderConfig& config)
    : client_(config), model_(config.model) {}

std::string HttpGenerationProvider::generate(const std::string& prompt, int max_tokens) {
    if (prompt.empty()) throw_internal("generate: empty prompt");
    json req{{"model", model_},
             {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
             {"max_tokens", max_tokens}};
    const json res =
        parse_response(client_.post_json("/v1/chat/completions", req.dump()), "chat/completions");
    if (!res.contains("choices") || res["choices"].empty()) {
        throw_provider("chat/completions: response carries no choices");
    }
    std::string text = res["choices"][0]["message"]["content"].get<std::string>();
    if (text.empty()) throw_provider("chat/completions: empty completion");
    return text;
}

HttpSearchProvider::HttpSearchProvider(const ProviderConfig& config) : client_(config) {}

std::vector<Document> HttpSearchProvider::search(SourceKind kind, const std::string& query,
                                                 int limit) {
    if (limit < 1) throw_data("search: limit must be >= 1");
    json req{{"source_kind", to_string(kind)}, {"query", query}, {"limit", limit}};
    const json res = parse_response(client_.post_json("/v1/search", req.dump()), "search");
    std::vector<Document> out;
    for (const auto& rec : res.value("results", json::array())) {
        Document doc;
        doc.id = rec.at("id").get<std::string>();
        doc.title = rec.value("title", "");
        doc.text = rec.value("text", "");
        doc.source_kind = kind;
        if (rec.contains("metadata")) {
            for (const auto& [k, v] : rec["metadata"].items()) {
                doc.metadata[k] = v.get<std::string>();
            }
        }
        out.push_back(std::move(doc));
    }
    return out;
}

HttpJudgeProvider::HttpJudgeProvider(const ProviderConfig& config)
    : client_(config), accept_threshold_(config.accept_threshold) {}

Feedback HttpJudgeProvider::judge(const std::string& query, const std::string& answer) {
    json req{{"query", query}, {"answer", answer}};
    const json res = parse_response(client_.post_json("/v1/judge", req.dump()), "judge");
    Feedback fb;
    if (!res.contains("scores")) throw_provider("judge: response carries no scores");
    for (const auto& key : kRubricKeys) {
        if (!res["scores"].contains(key)) throw_provider("judge: missing rubric key '" + key + "'");
        double v = res["scores"][key].get<double>();
        fb.scores[key] = std::max(0.0, std::min(4.0, v));
    }
    fb.comments = res.value("comments", "");
    fb.accept = fb.min_score() >= accept_threshold_;
    return fb;
}

}  // namespace graphrag
