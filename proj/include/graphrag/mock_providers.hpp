#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "graphrag/providers.hpp"

namespace graphrag {

// Deterministic feature-hash embedding: lowercased word multiset hashed into
// a fixed number of buckets, then L2-normalized. Equal texts give equal
// vectors; shared vocabulary gives proportional cosine similarity.
class MockEmbeddingProvider final : public EmbeddingProvider {
public:
    explicit MockEmbeddingProvider(std::uint64_t seed, int dim = 256);

    Embedding embed_text(const std::string& text) override;
    Embedding embed_image(const std::string& image_ref) override;
    int dim() const override { return dim_; }

private:
    std::uint64_t seed_;
    int dim_;
};

// One lexicon entry: a surface phrase and the entity type it denotes.
struct LexiconEntry {
    std::string phrase;
    std::string type_label;
};

// The built-in phrase table the mock extraction tasks match against.
const std::vector<LexiconEntry>& default_entity_lexicon();

// Template-driven text generation. Output is a pure function of the prompt:
// every template embeds a stable digest of the prompt's content lines, and
// extraction tasks run a small lexicon matcher over the content. Templates
// are documented next to each task handler in the implementation.
class MockGenerationProvider final : public GenerationProvider {
public:
    explicit MockGenerationProvider(std::uint64_t seed,
                                    std::vector<LexiconEntry> lexicon = default_entity_lexicon());

    std::string generate(const std::string& prompt, int max_tokens) override;

private:
    std::uint64_t seed_;
    std::vector<LexiconEntry> lexicon_;
};

// Fixture-backed search: a manifest maps each source kind to a corpus-format
// record file; results are ranked by mock-embedding cosine against the query.
class MockSearchProvider final : public SearchProvider {
public:
    MockSearchProvider(std::string fixture_dir, std::uint64_t seed);

    std::vector<Document> search(SourceKind kind, const std::string& query, int limit) override;

private:
    const std::vector<Document>& index_for(SourceKind kind);

    std::string fixture_dir_;
    MockEmbeddingProvider embedder_;
    std::unordered_map<std::string, std::vector<Document>> cache_;
    bool manifest_loaded_ = false;
    std::unordered_map<std::string, std::string> manifest_;
};

// Token-overlap judge. Documented formula, deterministic:
//   coverage  = |unique(answer) ∩ unique(query)| / |unique(query)|
//   jaccard   = |unique(answer) ∩ unique(query)| / |unique(answer) ∪ unique(query)|
//   distinct  = |unique(answer)| / |tokens(answer)|
//   helpfulness = 4·coverage, correctness = 4·jaccard, coherence = 4·distinct
//   complexity  = 4·min(1, n/32), verbosity = 4·min(1, n/48)   (n = token count)
// Empty answers score 0 on helpfulness, correctness, and coherence.
class MockJudgeProvider final : public JudgeProvider {
public:
    explicit MockJudgeProvider(std::uint64_t seed, double accept_threshold = 3.0);

    Feedback judge(const std::string& query, const std::string& answer) override;

private:
    std::uint64_t seed_;
    double accept_threshold_;
};

}  // namespace graphrag
