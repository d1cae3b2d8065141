#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "graphrag/kg_extract.hpp"
#include "graphrag/providers.hpp"

namespace graphrag {

struct Partition {
    std::map<std::string, int> assignment;  // node id -> community id
    double modularity = 0.0;
};

struct Community {
    int id = 0;
    int level = 0;  // 0 = finest
    std::set<std::string> members;
    std::vector<std::size_t> induced_edges;  // indices into KnowledgeGraph triples
    std::string summary;
    std::string summary_hash;  // content hash of the serialization the summary came from
    std::optional<Embedding> summary_embedding;

    bool has_summary() const { return !summary.empty(); }
};

struct CommunityHierarchy {
    std::vector<Partition> levels;      // levels[l] covers every node
    std::vector<Community> communities;  // all levels, ids unique across levels
};

// Entity/triple store plus the detected community hierarchy. Triples keep
// their direction and provenance; community detection and modularity use the
// undirected simple projection (at most one edge per node pair, self-loops
// excluded).
class KnowledgeGraph {
public:
    void add_entity(Entity entity);
    void add_triple(Triple triple);

    const std::map<std::string, Entity>& entities() const { return entities_; }
    const std::vector<Triple>& triples() const { return triples_; }
    const Entity* find_entity(const std::string& id) const;

    // Sorted node ids and the deduplicated undirected edge set.
    std::vector<std::string> node_ids() const;
    std::vector<std::pair<std::string, std::string>> simple_edges() const;

    const CommunityHierarchy& hierarchy() const { return hierarchy_; }
    void set_hierarchy(CommunityHierarchy hierarchy) { hierarchy_ = std::move(hierarchy); }
    Community* find_community(int id);
    const Community* find_community(int id) const;
    int max_level() const;

    std::uint64_t checksum() const;

    void save(const std::string& path) const;
    static KnowledgeGraph load(const std::string& path);

    // One CREATE statement per node and per edge, documented dialect.
    void export_statements(const std::string& path) const;

private:
    std::map<std::string, Entity> entities_;
    std::vector<Triple> triples_;
    CommunityHierarchy hierarchy_;
};

// Q = (1/2m) Σ_ij [A_ij − k_i k_j / 2m] δ(c_i, c_j) over the 0/1 undirected
// simple projection; defined as 0 for edgeless graphs.
double modularity(const KnowledgeGraph& graph, const Partition& partition);

// Hierarchical Leiden: seeded local moving, refinement, aggregation, repeated
// until a pass makes no improving move or max_levels is reached. Level 0 is
// the finest partition; per-level modularity is non-decreasing.
CommunityHierarchy detect_communities(const KnowledgeGraph& graph, std::uint64_t seed,
                                      int max_levels, double resolution = 1.0);

// Deterministic serialization of a community's members and induced triples;
// the input to summary generation and the cache key.
std::string serialize_community(const Community& community, const KnowledgeGraph& graph);

// Generates (or reuses) the community summary. Returns true when the cached
// summary was still valid and no provider call was made.
bool summarize_community(Community& community, const KnowledgeGraph& graph,
                         GenerationProvider& gen);

void embed_community_summaries(KnowledgeGraph& graph, EmbeddingProvider& embed);

}  // namespace graphrag
