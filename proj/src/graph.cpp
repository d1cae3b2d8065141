#include "graphrag/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "graphrag/errors.hpp"
#include "graphrag/hash.hpp"

namespace graphrag {

using nlohmann::json;

void KnowledgeGraph::add_entity(Entity entity) {
    if (entity.id.empty()) throw_data("entity id must be non-empty");
    entities_[entity.id] = std::move(entity);
}

void KnowledgeGraph::add_triple(Triple triple) {
    if (triple.predicate.empty()) throw_data("triple predicate must be non-empty");
    if (!entities_.count(triple.subject) || !entities_.count(triple.object)) {
        throw_data("triple references unknown entity '" +
                   (entities_.count(triple.subject) ? triple.object : triple.subject) + "'");
    }
    triples_.push_back(std::move(triple));
}

const Entity* KnowledgeGraph::find_entity(const std::string& id) const {
    auto it = entities_.find(id);
    return it == entities_.end() ? nullptr : &it->second;
}

std::vector<std::string> KnowledgeGraph::node_ids() const {
    std::vector<std::string> ids;
    ids.reserve(entities_.size());
    for (const auto& [id, entity] : entities_) {
        (void)entity;
        ids.push_back(id);
    }
    return ids;
}

std::vector<std::pair<std::string, std::string>> KnowledgeGraph::simple_edges() const {
    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& t : triples_) {
        if (t.subject == t.object) continue;
        edges.emplace(std::min(t.subject, t.object), std::max(t.subject, t.object));
    }
    return {edges.begin(), edges.end()};
}

Community* KnowledgeGraph::find_community(int id) {
    for (auto& c : hierarchy_.communities) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

const Community* KnowledgeGraph::find_community(int id) const {
    for (const auto& c : hierarchy_.communities) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

int KnowledgeGraph::max_level() const {
    return hierarchy_.levels.empty() ? -1 : static_cast<int>(hierarchy_.levels.size()) - 1;
}

double modularity(const KnowledgeGraph& graph, const Partition& partition) {
    const auto ids = graph.node_ids();
    for (const auto& id : ids) {
        if (!partition.assignment.count(id)) {
            throw_data("incomplete partition: node '" + id + "' has no community");
        }
    }
    const auto edges = graph.simple_edges();
    const double m = static_cast<double>(edges.size());
    if (m == 0.0) return 0.0;

    std::map<std::string, double> degree;
    std::map<int, double> internal;  // edges inside each community
    std::map<int, double> degree_sum;
    for (const auto& [a, b] : edges) {
        degree[a] += 1.0;
        degree[b] += 1.0;
        const int ca = partition.assignment.at(a);
        const int cb = partition.assignment.at(b);
        if (ca == cb) internal[ca] += 1.0;
    }
    for (const auto& id : ids) {
        degree_sum[partition.assignment.at(id)] += degree.count(id) ? degree[id] : 0.0;
    }
    double q = 0.0;
    for (const auto& [comm, ksum] : degree_sum) {
        const double in = internal.count(comm) ? internal[comm] : 0.0;
        q += in / m - (ksum / (2.0 * m)) * (ksum / (2.0 * m));
    }
    return q;
}

// ---------------------------------------------------------------------------
// Community summaries
// ---------------------------------------------------------------------------

std::string serialize_community(const Community& community, const KnowledgeGraph& graph) {
    auto name_of = [&](const std::string& id) {
        const Entity* e = graph.find_entity(id);
        return e ? e->canonical_name : id;
    };
    std::ostringstream out;
    out << "entities:\n";
    std::vector<std::string> names;
    for (const auto& id : community.members) {
        const Entity* e = graph.find_entity(id);
        names.push_back(e ? e->canonical_name + " (" + e->type_label + ")" : id);
    }
    std::sort(names.begin(), names.end());
    for (const auto& n : names) out << "- " << n << '\n';

    std::set<std::string> relation_lines;
    for (std::size_t idx : community.induced_edges) {
        const Triple& t = graph.triples().at(idx);
        relation_lines.insert(name_of(t.subject) + " -[" + t.predicate + "]-> " +
                              name_of(t.object));
    }
    if (!relation_lines.empty()) {
        out << "relations:\n";
        for (const auto& line : relation_lines) out << line << '\n';
    }
    return out.str();
}

bool summarize_community(Community& community, const KnowledgeGraph& graph,
                         GenerationProvider& gen) {
    if (community.members.empty()) {
        throw_data("community " + std::to_string(community.id) + " has no members");
    }
    const std::string serialized = serialize_community(community, graph);
    const std::string hash = hex_digest(serialized);
    if (community.has_summary() && community.summary_hash == hash) {
        return true;  // cache hit
    }
    Prompt prompt;
    prompt.task = "community_summary";
    prompt.headers = {{"community", std::to_string(community.id)}};
    prompt.content = serialized;
    std::string summary;
    try {
        summary = gen.generate(prompt.render(), 96);
    } catch (const Error& e) {
        throw Error(e.error_class(), std::string(e.what()) + " (while summarizing community " +
                                         std::to_string(community.id) + ")");
    }
    if (summary.empty()) {
        throw_provider("empty summary for community " + std::to_string(community.id));
    }
    community.summary = std::move(summary);
    community.summary_hash = hash;
    community.summary_embedding.reset();
    return false;
}

void embed_community_summaries(KnowledgeGraph& graph, EmbeddingProvider& embed) {
    CommunityHierarchy hierarchy = graph.hierarchy();
    for (auto& community : hierarchy.communities) {
        if (community.has_summary() && !community.summary_embedding) {
            community.summary_embedding = embed.embed_text(community.summary);
        }
    }
    graph.set_hierarchy(std::move(hierarchy));
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

namespace {

constexpr int kFormatVersion = 1;

json chunk_ref_to_json(const ChunkRef& ref) { return json::array({ref.doc_id, ref.index}); }

ChunkRef chunk_ref_from_json(const json& node) {
    return ChunkRef{node.at(0).get<std::string>(), node.at(1).get<int>()};
}

json graph_to_json(const KnowledgeGraph& graph) {
    json root;
    root["format"] = "graphrag-graph";
    root["version"] = kFormatVersion;

    json entities = json::array();
    for (const auto& [id, e] : graph.entities()) {
        json rec;
        rec["id"] = id;
        rec["canonical_name"] = e.canonical_name;
        rec["aliases"] = e.aliases;
        rec["type_label"] = e.type_label;
        rec["embedding"] = e.embedding.values;
        json prov = json::array();
        for (const auto& ref : e.provenance) prov.push_back(chunk_ref_to_json(ref));
        rec["provenance"] = prov;
        entities.push_back(std::move(rec));
    }
    root["entities"] = std::move(entities);

    json triples = json::array();
    for (const auto& t : graph.triples()) {
        triples.push_back(json{{"subject", t.subject},
                               {"predicate", t.predicate},
                               {"object", t.object},
                               {"chunk", chunk_ref_to_json(t.chunk_ref)},
                               {"confidence", t.confidence}});
    }
    root["triples"] = std::move(triples);

    json levels = json::array();
    for (const auto& level : graph.hierarchy().levels) {
        json rec;
        rec["modularity"] = level.modularity;
        rec["assignment"] = level.assignment;
        levels.push_back(std::move(rec));
    }
    root["levels"] = std::move(levels);

    json communities = json::array();
    for (const auto& c : graph.hierarchy().communities) {
        json rec;
        rec["id"] = c.id;
        rec["level"] = c.level;
        rec["members"] = c.members;
        rec["induced_edges"] = c.induced_edges;
        if (c.has_summary()) {
            rec["summary"] = c.summary;
            rec["summary_hash"] = c.summary_hash;
        }
        if (c.summary_embedding) rec["summary_embedding"] = c.summary_embedding->values;
        communities.push_back(std::move(rec));
    }
    root["communities"] = std::move(communities);
    return root;
}

}  // namespace

std::uint64_t KnowledgeGraph::checksum() const { return fnv1a64(graph_to_json(*this).dump()); }

void KnowledgeGraph::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw_data("cannot write graph file: " + path);
    out << graph_to_json(*this).dump(2) << '\n';
}

KnowledgeGraph KnowledgeGraph::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_data("cannot open graph file: " + path);
    json root = json::parse(in, nullptr, false);
    if (root.is_discarded() || !root.is_object()) {
        throw_data("graph file is truncated or malformed: " + path);
    }
    if (root.value("format", "") != "graphrag-graph") {
        throw_data("not a graph file: " + path);
    }
    if (root.value("version", -1) != kFormatVersion) {
        throw_data("unsupported graph file version " + root["version"].dump() + " (expected " +
                   std::to_string(kFormatVersion) + ")");
    }

    KnowledgeGraph graph;
    for (const auto& rec : root.at("entities")) {
        Entity e;
        e.id = rec.at("id").get<std::string>();
        e.canonical_name = rec.at("canonical_name").get<std::string>();
        for (const auto& a : rec.at("aliases")) e.aliases.insert(a.get<std::string>());
        e.type_label = rec.at("type_label").get<std::string>();
        e.embedding.values = rec.at("embedding").get<std::vector<double>>();
        for (const auto& p : rec.at("provenance")) e.provenance.insert(chunk_ref_from_json(p));
        graph.add_entity(std::move(e));
    }
    for (const auto& rec : root.at("triples")) {
        graph.add_triple(Triple{rec.at("subject").get<std::string>(),
                                rec.at("predicate").get<std::string>(),
                                rec.at("object").get<std::string>(),
                                chunk_ref_from_json(rec.at("chunk")),
                                rec.at("confidence").get<double>()});
    }
    CommunityHierarchy hierarchy;
    for (const auto& rec : root.at("levels")) {
        Partition level;
        level.modularity = rec.at("modularity").get<double>();
        for (const auto& [node, comm] : rec.at("assignment").items()) {
            level.assignment[node] = comm.get<int>();
        }
        hierarchy.levels.push_back(std::move(level));
    }
    for (const auto& rec : root.at("communities")) {
        Community c;
        c.id = rec.at("id").get<int>();
        c.level = rec.at("level").get<int>();
        for (const auto& mem : rec.at("members")) c.members.insert(mem.get<std::string>());
        c.induced_edges = rec.at("induced_edges").get<std::vector<std::size_t>>();
        if (rec.contains("summary")) {
            c.summary = rec["summary"].get<std::string>();
            c.summary_hash = rec.value("summary_hash", "");
        }
        if (rec.contains("summary_embedding")) {
            Embedding emb;
            emb.values = rec["summary_embedding"].get<std::vector<double>>();
            c.summary_embedding = std::move(emb);
        }
        hierarchy.communities.push_back(std::move(c));
    }
    graph.set_hierarchy(std::move(hierarchy));
    return graph;
}

// ---------------------------------------------------------------------------
// Statement export
// ---------------------------------------------------------------------------

namespace {

// Escaping rule: backslash and double quote are backslash-escaped.
std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '\\' || c == '"') out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out.push_back(c);
    }
    return out;
}

}  // namespace

void KnowledgeGraph::export_statements(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw_data("cannot write statement script: " + path);
    for (const auto& [id, e] : entities_) {
        std::string aliases;
        for (const auto& a : e.aliases) {
            if (!aliases.empty()) aliases += "|";
            aliases += a;
        }
        out << "CREATE (:Entity {id: \"" << escape(id) << "\", name: \""
            << escape(e.canonical_name) << "\", type: \"" << escape(e.type_label)
            << "\", aliases: \"" << escape(aliases) << "\"});\n";
    }
    for (const auto& t : triples_) {
        char conf[16];
        std::snprintf(conf, sizeof(conf), "%.4f", t.confidence);
        out << "MATCH (a {id: \"" << escape(t.subject) << "\"}), (b {id: \"" << escape(t.object)
            << "\"}) CREATE (a)-[:REL {predicate: \"" << escape(t.predicate) << "\", chunk: \""
            << escape(t.chunk_ref.str()) << "\", confidence: " << conf << "}]->(b);\n";
    }
}

}  // namespace graphrag
