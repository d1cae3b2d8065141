#pragma once

#include <set>
#include <string>
#include <vector>

#include "graphrag/config.hpp"
#include "graphrag/graph.hpp"
#include "graphrag/providers.hpp"

namespace graphrag {

struct CommunityScore {
    int community_id = 0;
    double score = 0.0;  // cosine of query and summary embeddings

    bool operator==(const CommunityScore&) const = default;
};

// Alternating entity/predicate sequence; hop i is the stored triple
// (entities[i], predicates[i], entities[i+1]).
struct Path {
    std::vector<std::string> entities;
    std::vector<std::string> predicates;

    int hops() const { return static_cast<int>(predicates.size()); }
    bool operator==(const Path&) const = default;
};

struct Subgraph {
    std::set<std::string> nodes;
    std::set<std::size_t> edges;  // indices into KnowledgeGraph triples
};

struct QueryResult {
    std::string answer;
    std::vector<CommunityScore> ranked_communities;
    std::vector<int> selected_communities;
    Subgraph subgraph;
    std::vector<std::string> seed_entities;
    std::vector<Path> paths;
    bool low_evidence = false;
    std::vector<std::string> warnings;
};

// Cosine ranking of community summaries at the given levels, descending,
// ties by community id. Every ranked community must carry a summary embedding.
std::vector<CommunityScore> rank_communities(const std::string& query, const KnowledgeGraph& graph,
                                             EmbeddingProvider& embed,
                                             const std::vector<int>& levels);

// Union of the named communities' members and induced edges.
Subgraph build_subgraph(const KnowledgeGraph& graph, const std::vector<int>& community_ids);

// Hop-bounded, cycle-free forward traversal from each seed over the subgraph.
// Paths are ordered by hop count, then entity-id sequence, then predicates,
// and truncated at max_paths.
std::vector<Path> extract_paths(const KnowledgeGraph& graph, const Subgraph& subgraph,
                                const std::vector<std::string>& seed_entities, int max_hops,
                                int max_paths);

// Entities whose embeddings clear link_threshold cosine with the query,
// best first, at most top_n.
std::vector<std::string> query_entity_linking(const std::string& query,
                                              const KnowledgeGraph& graph,
                                              EmbeddingProvider& embed, double link_threshold,
                                              int top_n);

std::string serialize_path(const Path& path, const KnowledgeGraph& graph);

// Full query pipeline: link seeds, rank communities, take top K, build the
// subgraph, extract paths, and synthesize the answer with full provenance.
QueryResult answer_query(const std::string& query, const KnowledgeGraph& graph,
                         const ProviderSet& providers, const RetrieveConfig& config);

}  // namespace graphrag
