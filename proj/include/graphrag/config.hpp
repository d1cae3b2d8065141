#pragma once

#include <cstdint>
#include <string>

namespace graphrag {

struct ProviderConfig {
    enum class Kind { Mock, Http };

    Kind kind = Kind::Mock;
    std::uint64_t seed = 0;       // mock backends
    std::string endpoint;         // http backends, e.g. "http://localhost:8089"
    std::string model;
    std::string credentials_env;  // env var holding the bearer token
    int timeout_ms = 10000;
    int max_retries = 3;
    int dim = 256;                // embedding providers
    std::string fixture_dir;      // mock search index directory
    double accept_threshold = 3.0;  // judge providers
};

struct ChunkConfig {
    int window_tokens = 1024;
    int stride_tokens = 128;
    int context_budget_tokens = 64;
};

struct ExtractConfig {
    int max_triples_per_chunk = 20;
};

struct DedupConfig {
    double tau_sim = 0.9;
    double tau_str = 0.8;
    int max_edit_distance = 5;
};

struct CommunityConfig {
    std::uint64_t seed = 42;
    int max_levels = 3;
    double resolution = 1.0;
};

struct RetrieveConfig {
    int top_k = 5;
    int max_hops = 3;
    int max_paths = 20;
    double link_threshold = 0.5;
    int link_top_n = 5;
    bool all_levels = false;
};

struct AgentsConfig {
    int n_max = 3;
    double accept_threshold = 3.0;
    int top_k = 3;
    int retrieval_limit = 8;
};

// Full run configuration. Loaded from a JSON file with an exhaustive schema
// check: unknown keys are rejected by name, and every numeric parameter is
// range-checked. Relative paths inside the file resolve against the file's
// directory.
struct RunConfig {
    ProviderConfig embedding;
    ProviderConfig generation;
    ProviderConfig search;
    ProviderConfig judge;
    ChunkConfig chunk;
    ExtractConfig extract;
    DedupConfig dedup;
    CommunityConfig community;
    RetrieveConfig retrieve;
    AgentsConfig agents;

    static RunConfig defaults();
    static RunConfig from_file(const std::string& path);
    static RunConfig from_json_text(const std::string& text, const std::string& base_dir = "");

    void validate() const;
};

}  // namespace graphrag
