#include "graphrag/retrieve.hpp"

#include <algorithm>
#include <map>

#include "graphrag/errors.hpp"

namespace graphrag {

std::vector<CommunityScore> rank_communities(const std::string& query, const KnowledgeGraph& graph,
                                             EmbeddingProvider& embed,
                                             const std::vector<int>& levels) {
    const std::set<int> wanted(levels.begin(), levels.end());
    const Embedding query_emb = embed.embed_text(query);

    std::vector<CommunityScore> scores;
    for (const auto& community : graph.hierarchy().communities) {
        if (!wanted.count(community.level)) continue;
        if (!community.summary_embedding) {
            throw_data("community " + std::to_string(community.id) +
                       " has no summary embedding; run the build (or communities) step first");
        }
        scores.push_back({community.id, cosine(query_emb, *community.summary_embedding)});
    }
    std::sort(scores.begin(), scores.end(), [](const CommunityScore& a, const CommunityScore& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.community_id < b.community_id;
    });
    return scores;
}

Subgraph build_subgraph(const KnowledgeGraph& graph, const std::vector<int>& community_ids) {
    if (community_ids.empty()) throw_data("build_subgraph: need at least one community");
    Subgraph out;
    for (int id : community_ids) {
        const Community* community = graph.find_community(id);
        if (!community) throw_data("unknown community id " + std::to_string(id));
        out.nodes.insert(community->members.begin(), community->members.end());
        out.edges.insert(community->induced_edges.begin(), community->induced_edges.end());
    }
    return out;
}

std::vector<Path> extract_paths(const KnowledgeGraph& graph, const Subgraph& subgraph,
                                const std::vector<std::string>& seed_entities, int max_hops,
                                int max_paths) {
    // Forward adjacency over the subgraph edges, deterministic order.
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> forward;
    for (std::size_t idx : subgraph.edges) {
        const Triple& t = graph.triples().at(idx);
        forward[t.subject].emplace_back(t.predicate, t.object);
    }
    for (auto& [node, edges] : forward) {
        (void)node;
        std::sort(edges.begin(), edges.end());
    }

    std::vector<std::string> seeds;
    for (const auto& seed : seed_entities) {
        if (subgraph.nodes.count(seed)) seeds.push_back(seed);
    }
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    std::vector<Path> paths;
    for (const auto& seed : seeds) {
        std::vector<Path> frontier;
        frontier.push_back(Path{{seed}, {}});
        for (int hop = 0; hop < max_hops; ++hop) {
            std::vector<Path> next;
            for (const auto& path : frontier) {
                auto it = forward.find(path.entities.back());
                if (it == forward.end()) continue;
                for (const auto& [predicate, target] : it->second) {
                    if (std::find(path.entities.begin(), path.entities.end(), target) !=
                        path.entities.end()) {
                        continue;  // cycle-free
                    }
                    Path extended = path;
                    extended.entities.push_back(target);
                    extended.predicates.push_back(predicate);
                    paths.push_back(extended);
                    next.push_back(std::move(extended));
                }
            }
            frontier = std::move(next);
        }
    }

    std::sort(paths.begin(), paths.end(), [](const Path& a, const Path& b) {
        if (a.hops() != b.hops()) return a.hops() < b.hops();
        if (a.entities != b.entities) return a.entities < b.entities;
        return a.predicates < b.predicates;
    });
    paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
    if (static_cast<int>(paths.size()) > max_paths) {
        paths.resize(static_cast<std::size_t>(max_paths));
    }
    return paths;
}

std::vector<std::string> query_entity_linking(const std::string& query,
                                              const KnowledgeGraph& graph,
                                              EmbeddingProvider& embed, double link_threshold,
                                              int top_n) {
    const Embedding query_emb = embed.embed_text(query);
    std::vector<std::pair<double, std::string>> scored;
    for (const auto& [id, entity] : graph.entities()) {
        const double score = cosine(query_emb, entity.embedding);
        if (score >= link_threshold) scored.emplace_back(score, id);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<std::string> out;
    for (const auto& [score, id] : scored) {
        (void)score;
        if (static_cast<int>(out.size()) >= top_n) break;
        out.push_back(id);
    }
    return out;
}

std::string serialize_path(const Path& path, const KnowledgeGraph& graph) {
    auto name_of = [&](const std::string& id) {
        const Entity* e = graph.find_entity(id);
        return e ? e->canonical_name : id;
    };
    std::string out = name_of(path.entities.front());
    for (std::size_t i = 0; i < path.predicates.size(); ++i) {
        out += " -[" + path.predicates[i] + "]-> " + name_of(path.entities[i + 1]);
    }
    return out;
}

QueryResult answer_query(const std::string& query, const KnowledgeGraph& graph,
                         const ProviderSet& providers, const RetrieveConfig& config) {
    QueryResult result;

    std::vector<int> levels;
    if (config.all_levels) {
        for (int l = 0; l <= graph.max_level(); ++l) levels.push_back(l);
    } else {
        levels.push_back(0);  // leaf level
    }
    result.ranked_communities = rank_communities(query, graph, *providers.embedding, levels);
    if (result.ranked_communities.empty()) {
        throw_data("graph has no communities at the queried levels; run the build step first");
    }

    int top_k = config.top_k;
    if (top_k > static_cast<int>(result.ranked_communities.size())) {
        top_k = static_cast<int>(result.ranked_communities.size());
        result.warnings.push_back("top_k clamped to " + std::to_string(top_k));
    }
    for (int i = 0; i < top_k; ++i) {
        result.selected_communities.push_back(result.ranked_communities[i].community_id);
    }
    result.subgraph = build_subgraph(graph, result.selected_communities);

    const auto linked = query_entity_linking(query, graph, *providers.embedding,
                                             config.link_threshold, config.link_top_n);
    for (const auto& id : linked) {
        if (result.subgraph.nodes.count(id)) {
            result.seed_entities.push_back(id);
        } else {
            result.warnings.push_back("linked entity outside subgraph: " + id);
        }
    }
    result.paths = extract_paths(graph, result.subgraph, result.seed_entities, config.max_hops,
                                 config.max_paths);
    result.low_evidence = result.paths.empty();

    Prompt prompt;
    prompt.task = "answer";
    prompt.headers = {{"query", query}};
    std::string content;
    for (const auto& path : result.paths) {
        content += serialize_path(path, graph) + "\n";
    }
    if (result.paths.empty()) content = "(no reasoning paths found)\n";
    prompt.content = content;
    result.answer = providers.generation->generate(prompt.render(), 256);
    return result;
}

}  // namespace graphrag
