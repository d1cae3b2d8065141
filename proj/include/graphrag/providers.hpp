#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "graphrag/corpus.hpp"

namespace graphrag {

struct Embedding {
    std::vector<double> values;

    int dim() const { return static_cast<int>(values.size()); }
    double norm() const;
};

double cosine(const Embedding& a, const Embedding& b);

// The five feedback dimensions, scored on the 0..4 scale.
extern const std::vector<std::string> kRubricKeys;

struct Feedback {
    std::map<std::string, double> scores;  // all five rubric keys, each in [0,4]
    bool accept = false;
    std::string comments;

    double min_score() const;
};

// Prompts are plain strings on the wire. Modules build them as a task line
// (`#task <name>`), optional `#<key> <value>` header lines, then content.
// The mock providers parse this layout back; HTTP providers pass it through.
struct Prompt {
    std::string task;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string content;

    std::string render() const;
    static Prompt parse(const std::string& rendered);
};

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual Embedding embed_text(const std::string& text) = 0;
    virtual Embedding embed_image(const std::string& image_ref) = 0;
    virtual int dim() const = 0;
};

class GenerationProvider {
public:
    virtual ~GenerationProvider() = default;
    virtual std::string generate(const std::string& prompt, int max_tokens) = 0;
};

class SearchProvider {
public:
    virtual ~SearchProvider() = default;
    virtual std::vector<Document> search(SourceKind kind, const std::string& query, int limit) = 0;
};

class JudgeProvider {
public:
    virtual ~JudgeProvider() = default;
    virtual Feedback judge(const std::string& query, const std::string& answer) = 0;
};

struct ProviderSet {
    std::shared_ptr<EmbeddingProvider> embedding;
    std::shared_ptr<GenerationProvider> generation;
    std::shared_ptr<SearchProvider> search;
    std::shared_ptr<JudgeProvider> judge;
};

struct RunConfig;  // config.hpp

// Instantiates the configured backends (mock or http) for all four contracts.
ProviderSet make_providers(const RunConfig& config);

}  // namespace graphrag
