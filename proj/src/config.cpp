#include "graphrag/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "graphrag/errors.hpp"

namespace graphrag {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& node, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : node.items()) {
        (void)value;
        if (allowed.count(key) == 0) {
            throw_config("unknown config key '" + where + key + "'");
        }
    }
}

void check_range(bool ok, const std::string& what) {
    if (!ok) throw_config("config value out of range: " + what);
}

std::string resolve_path(const std::string& path, const std::string& base_dir) {
    if (path.empty() || base_dir.empty()) return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

ProviderConfig parse_provider(const json& node, const std::string& where,
                              const std::string& base_dir) {
    reject_unknown_keys(node,
                        {"kind", "seed", "endpoint", "model", "credentials_env", "timeout_ms",
                         "max_retries", "dim", "fixture_dir", "accept_threshold"},
                        where);
    ProviderConfig cfg;
    const std::string kind = node.value("kind", "mock");
    if (kind == "mock") {
        cfg.kind = ProviderConfig::Kind::Mock;
    } else if (kind == "http") {
        cfg.kind = ProviderConfig::Kind::Http;
    } else {
        throw_config("unknown provider kind '" + kind + "' at " + where + "kind");
    }
    cfg.seed = node.value("seed", cfg.seed);
    cfg.endpoint = node.value("endpoint", cfg.endpoint);
    cfg.model = node.value("model", cfg.model);
    cfg.credentials_env = node.value("credentials_env", cfg.credentials_env);
    cfg.timeout_ms = node.value("timeout_ms", cfg.timeout_ms);
    cfg.max_retries = node.value("max_retries", cfg.max_retries);
    cfg.dim = node.value("dim", cfg.dim);
    cfg.fixture_dir = resolve_path(node.value("fixture_dir", cfg.fixture_dir), base_dir);
    cfg.accept_threshold = node.value("accept_threshold", cfg.accept_threshold);
    if (cfg.kind == ProviderConfig::Kind::Http && cfg.endpoint.empty()) {
        throw_config("provider at " + where + " has kind http but no endpoint");
    }
    check_range(cfg.timeout_ms > 0, where + "timeout_ms");
    check_range(cfg.max_retries >= 1, where + "max_retries");
    check_range(cfg.dim >= 1, where + "dim");
    check_range(cfg.accept_threshold >= 0.0 && cfg.accept_threshold <= 4.0,
                where + "accept_threshold");
    return cfg;
}

}  // namespace

RunConfig RunConfig::defaults() { return RunConfig{}; }

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_config("cannot open config file: " + path);
    std::ostringstream body;
    body << in.rdbuf();
    return from_json_text(body.str(), std::filesystem::path(path).parent_path().string());
}

RunConfig RunConfig::from_json_text(const std::string& text, const std::string& base_dir) {
    json root = json::parse(text, nullptr, false);
    if (root.is_discarded() || !root.is_object()) {
        throw_config("config is not a JSON object");
    }
    reject_unknown_keys(root, {"providers", "chunk", "extract", "dedup", "community", "retrieve",
                               "agents"},
                        "");

    RunConfig cfg;
    if (root.contains("providers")) {
        const json& p = root["providers"];
        reject_unknown_keys(p, {"embedding", "generation", "search", "judge"}, "providers.");
        if (p.contains("embedding"))
            cfg.embedding = parse_provider(p["embedding"], "providers.embedding.", base_dir);
        if (p.contains("generation"))
            cfg.generation = parse_provider(p["generation"], "providers.generation.", base_dir);
        if (p.contains("search"))
            cfg.search = parse_provider(p["search"], "providers.search.", base_dir);
        if (p.contains("judge"))
            cfg.judge = parse_provider(p["judge"], "providers.judge.", base_dir);
    }
    if (root.contains("chunk")) {
        const json& c = root["chunk"];
        reject_unknown_keys(c, {"window_tokens", "stride_tokens", "context_budget_tokens"},
                            "chunk.");
        cfg.chunk.window_tokens = c.value("window_tokens", cfg.chunk.window_tokens);
        cfg.chunk.stride_tokens = c.value("stride_tokens", cfg.chunk.stride_tokens);
        cfg.chunk.context_budget_tokens =
            c.value("context_budget_tokens", cfg.chunk.context_budget_tokens);
    }
    if (root.contains("extract")) {
        const json& e = root["extract"];
        reject_unknown_keys(e, {"max_triples_per_chunk"}, "extract.");
        cfg.extract.max_triples_per_chunk =
            e.value("max_triples_per_chunk", cfg.extract.max_triples_per_chunk);
    }
    if (root.contains("dedup")) {
        const json& d = root["dedup"];
        reject_unknown_keys(d, {"tau_sim", "tau_str", "max_edit_distance"}, "dedup.");
        cfg.dedup.tau_sim = d.value("tau_sim", cfg.dedup.tau_sim);
        cfg.dedup.tau_str = d.value("tau_str", cfg.dedup.tau_str);
        cfg.dedup.max_edit_distance = d.value("max_edit_distance", cfg.dedup.max_edit_distance);
    }
    if (root.contains("community")) {
        const json& c = root["community"];
        reject_unknown_keys(c, {"seed", "max_levels", "resolution"}, "community.");
        cfg.community.seed = c.value("seed", cfg.community.seed);
        cfg.community.max_levels = c.value("max_levels", cfg.community.max_levels);
        cfg.community.resolution = c.value("resolution", cfg.community.resolution);
    }
    if (root.contains("retrieve")) {
        const json& r = root["retrieve"];
        reject_unknown_keys(
            r, {"top_k", "max_hops", "max_paths", "link_threshold", "link_top_n", "all_levels"},
            "retrieve.");
        cfg.retrieve.top_k = r.value("top_k", cfg.retrieve.top_k);
        cfg.retrieve.max_hops = r.value("max_hops", cfg.retrieve.max_hops);
        cfg.retrieve.max_paths = r.value("max_paths", cfg.retrieve.max_paths);
        cfg.retrieve.link_threshold = r.value("link_threshold", cfg.retrieve.link_threshold);
        cfg.retrieve.link_top_n = r.value("link_top_n", cfg.retrieve.link_top_n);
        cfg.retrieve.all_levels = r.value("all_levels", cfg.retrieve.all_levels);
    }
    if (root.contains("agents")) {
        const json& a = root["agents"];
        reject_unknown_keys(a, {"n_max", "accept_threshold", "top_k", "retrieval_limit"},
                            "agents.");
        cfg.agents.n_max = a.value("n_max", cfg.agents.n_max);
        cfg.agents.accept_threshold = a.value("accept_threshold", cfg.agents.accept_threshold);
        cfg.agents.top_k = a.value("top_k", cfg.agents.top_k);
        cfg.agents.retrieval_limit = a.value("retrieval_limit", cfg.agents.retrieval_limit);
    }
    cfg.validate();
    return cfg;
}

void RunConfig::validate() const {
    check_range(chunk.window_tokens >= 1, "chunk.window_tokens");
    check_range(chunk.stride_tokens >= 1 && chunk.stride_tokens <= chunk.window_tokens,
                "chunk.stride_tokens");
    check_range(chunk.context_budget_tokens >= 1, "chunk.context_budget_tokens");
    check_range(extract.max_triples_per_chunk >= 1, "extract.max_triples_per_chunk");
    check_range(dedup.tau_sim >= -1.0 && dedup.tau_sim <= 1.0, "dedup.tau_sim");
    check_range(dedup.tau_str >= 0.0 && dedup.tau_str <= 1.0, "dedup.tau_str");
    check_range(dedup.max_edit_distance >= 0, "dedup.max_edit_distance");
    check_range(community.max_levels >= 1, "community.max_levels");
    check_range(community.resolution > 0.0, "community.resolution");
    check_range(retrieve.top_k >= 1, "retrieve.top_k");
    check_range(retrieve.max_hops >= 1, "retrieve.max_hops");
    check_range(retrieve.max_paths >= 1, "retrieve.max_paths");
    check_range(retrieve.link_threshold >= -1.0 && retrieve.link_threshold <= 1.0,
                "retrieve.link_threshold");
    check_range(retrieve.link_top_n >= 1, "retrieve.link_top_n");
    check_range(agents.n_max >= 0, "agents.n_max");
    check_range(agents.accept_threshold >= 0.0 && agents.accept_threshold <= 4.0,
                "agents.accept_threshold");
    check_range(agents.top_k >= 1, "agents.top_k");
    check_range(agents.retrieval_limit >= 1, "agents.retrieval_limit");
}

}  // namespace graphrag
