#pragma once

#include <string>

#include "graphrag/config.hpp"
#include "graphrag/providers.hpp"

namespace graphrag {

// HTTP-backed providers speak a chat-completion-style wire contract:
//
//   POST {endpoint}/v1/embeddings
//     request  {"model": "...", "input": ["text"]}
//     response {"data": [{"embedding": [0.1, ...]}]}
//
//   POST {endpoint}/v1/chat/completions
//     request  {"model": "...", "messages": [{"role": "user", "content": "..."}],
//               "max_tokens": 256}
//     response {"choices": [{"message": {"content": "..."}}]}
//
//   POST {endpoint}/v1/search
//     request  {"source_kind": "wiki", "query": "...", "limit": 5}
//     response {"results": [corpus document records]}
//
//   POST {endpoint}/v1/judge
//     request  {"query": "...", "answer": "..."}
//     response {"scores": {"helpfulness": 3.5, ...}, "comments": "..."}
//
// Credentials come from the environment variable named in the config and are
// sent as `Authorization: Bearer <token>`. Requests are retried with
// exponential backoff; all requests here are idempotent.

class HttpClient {
public:
    explicit HttpClient(const ProviderConfig& config);

    // POSTs JSON and returns the parsed response body, retrying transport
    // failures and 5xx responses up to max_retries attempts.
    std::string post_json(const std::string& path, const std::string& body) const;

private:
    std::string endpoint_;
    std::string bearer_token_;
    int timeout_ms_;
    int max_retries_;
};

class HttpEmbeddingProvider final : public EmbeddingProvider {
public:
    explicit HttpEmbeddingProvider(const ProviderConfig& config);

    Embedding embed_text(const std::string& text) override;
    Embedding embed_image(const std::string& image_ref) override;
    int dim() const override { return dim_; }

private:
    Embedding request(const std::string& input, const std::string& modality);

    HttpClient client_;
    std::string model_;
    int dim_;
};

class HttpGenerationProvider final : public GenerationProvider {
public:
    explicit HttpGenerationProvider(const ProviderConfig& config);

    std::string generate(const std::string& prompt, int max_tokens) override;

private:
    HttpClient client_;
    std::string model_;
};

class HttpSearchProvider final : public SearchProvider {
public:
    explicit HttpSearchProvider(const ProviderConfig& config);

    std::vector<Document> search(SourceKind kind, const std::string& query, int limit) override;

private:
    HttpClient client_;
};

class HttpJudgeProvider final : public JudgeProvider {
public:
    explicit HttpJudgeProvider(const ProviderConfig& config);

    Feedback judge(const std::string& query, const std::string& answer) override;

private:
    HttpClient client_;
    double accept_threshold_;
};

}  // namespace graphrag
