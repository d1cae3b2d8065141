#include "graphrag/kg_extract.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "graphrag/errors.hpp"
#include "graphrag/hash.hpp"
#include "graphrag/text.hpp"

namespace graphrag {

std::string entity_id_for(const std::string& name, const std::string& type_label) {
    return "ent-" + hex_digest(normalize_name(name) + "\x1f" + type_label);
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        std::size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
    return fields;
}

}  // namespace

std::vector<EntityMention> extract_entities(const ContextualizedChunk& cc,
                                            GenerationProvider& gen) {
    const ChunkRef ref{cc.chunk.doc_id, cc.chunk.index};
    if (cc.chunk.text.empty()) return {};

    Prompt prompt;
    prompt.task = "extract_entities";
    prompt.headers = {{"chunk", ref.str()}};
    prompt.content = cc.enriched_text;
    const std::string raw = gen.generate(prompt.render(), 0);

    std::vector<EntityMention> mentions;
    std::set<std::string> seen;
    bool any_wellformed = false;
    for (const auto& line : split_lines(raw)) {
        if (line == "NONE") {
            any_wellformed = true;
            continue;
        }
        const auto fields = split_tabs(line);
        if (fields.size() != 3 || fields[0] != "ENTITY" || fields[1].empty()) continue;
        any_wellformed = true;
        if (!seen.insert(fields[1]).second) continue;  // exact-surface dedup within the chunk
        mentions.push_back({fields[1], fields[2], ref});
    }
    if (!any_wellformed) {
        throw_data("extraction output unparseable for chunk " + ref.str());
    }
    return mentions;
}

std::vector<Triple> extract_relations(const ContextualizedChunk& cc,
                                      const std::vector<EntityMention>& mentions,
                                      GenerationProvider& gen, int max_triples) {
    if (mentions.size() < 2) return {};
    const ChunkRef ref{cc.chunk.doc_id, cc.chunk.index};

    Prompt prompt;
    prompt.task = "extract_relations";
    prompt.headers = {{"chunk", ref.str()}};
    std::map<std::string, std::string> surface_to_id;
    for (const auto& m : mentions) {
        prompt.headers.emplace_back("mention", m.surface + "|" + m.type_label);
        surface_to_id[m.surface] = entity_id_for(m.surface, m.type_label);
    }
    prompt.content = cc.enriched_text;
    const std::string raw = gen.generate(prompt.render(), 0);

    std::vector<Triple> triples;
    bool any_wellformed = false;
    for (const auto& line : split_lines(raw)) {
        if (line == "NONE") {
            any_wellformed = true;
            continue;
        }
        const auto fields = split_tabs(line);
        if (fields.size() != 5 || fields[0] != "TRIPLE" || fields[2].empty()) continue;
        any_wellformed = true;
        auto subj = surface_to_id.find(fields[1]);
        auto obj = surface_to_id.find(fields[3]);
        if (subj == surface_to_id.end() || obj == surface_to_id.end()) continue;
        double confidence = 0.0;
        try {
            confidence = std::stod(fields[4]);
        } catch (...) {
            continue;
        }
        confidence = std::max(0.0, std::min(1.0, confidence));
        triples.push_back({subj->second, fields[2], obj->second, ref, confidence});
    }
    if (!any_wellformed) {
        throw_data("relation output unparseable for chunk " + ref.str());
    }

    if (static_cast<int>(triples.size()) > max_triples) {
        // Keep the highest-confidence triples; stable sort preserves provider
        // order among ties.
        std::stable_sort(triples.begin(), triples.end(),
                         [](const Triple& a, const Triple& b) { return a.confidence > b.confidence; });
        triples.resize(static_cast<std::size_t>(max_triples));
    }
    return triples;
}

int levenshtein(const std::string& a, const std::string& b) {
    const auto ca = utf8_codepoints(a);
    const auto cb = utf8_codepoints(b);
    std::vector<int> prev(cb.size() + 1);
    std::vector<int> curr(cb.size() + 1);
    std::iota(prev.begin(), prev.end(), 0);
    for (std::size_t i = 1; i <= ca.size(); ++i) {
        curr[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= cb.size(); ++j) {
            const int subst = prev[j - 1] + (ca[i - 1] == cb[j - 1] ? 0 : 1);
            curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, subst});
        }
        std::swap(prev, curr);
    }
    return prev[cb.size()];
}

double string_similarity(const std::string& a, const std::string& b) {
    const std::string na = normalize_name(a);
    const std::string nb = normalize_name(b);
    const std::size_t la = utf8_codepoints(na).size();
    const std::size_t lb = utf8_codepoints(nb).size();
    if (la == 0 && lb == 0) return 1.0;
    const double d = levenshtein(na, nb);
    return 1.0 - d / static_cast<double>(std::max(la, lb));
}

std::vector<Entity> build_entities(const std::vector<EntityMention>& mentions,
                                   EmbeddingProvider& embed) {
    std::map<std::pair<std::string, std::string>, Entity> grouped;  // (norm name, type) -> entity
    for (const auto& m : mentions) {
        const std::string norm = normalize_name(m.surface);
        auto key = std::make_pair(norm, m.type_label);
        auto it = grouped.find(key);
        if (it == grouped.end()) {
            Entity e;
            e.id = entity_id_for(m.surface, m.type_label);
            e.type_label = m.type_label;
            e.embedding = embed.embed_text(norm);
            it = grouped.emplace(std::move(key), std::move(e)).first;
        }
        it->second.aliases.insert(m.surface);
        it->second.provenance.insert(m.chunk_ref);
    }
    std::vector<Entity> out;
    out.reserve(grouped.size());
    for (auto& [key, entity] : grouped) {
        entity.canonical_name = *entity.aliases.begin();
        out.push_back(std::move(entity));
    }
    return out;
}

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

MergeResult merge_duplicates(const std::vector<Entity>& entities,
                             const std::vector<Triple>& triples, double tau_sim, double tau_str,
                             int max_edit_distance) {
    // Process in canonical-name order so the result is independent of input
    // permutation.
    std::vector<std::size_t> order(entities.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (entities[a].canonical_name != entities[b].canonical_name) {
            return entities[a].canonical_name < entities[b].canonical_name;
        }
        return entities[a].type_label < entities[b].type_label;
    });

    UnionFind uf(entities.size());
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
            const Entity& a = entities[order[oi]];
            const Entity& b = entities[order[oj]];
            if (a.type_label != b.type_label) continue;  // blocking
            const std::string na = normalize_name(a.canonical_name);
            const std::string nb = normalize_name(b.canonical_name);
            if (levenshtein(na, nb) > max_edit_distance) continue;
            if (string_similarity(a.canonical_name, b.canonical_name) < tau_str) continue;
            if (cosine(a.embedding, b.embedding) < tau_sim) continue;
            uf.unite(order[oi], order[oj]);
        }
    }

    // Collect groups keyed by root (root indices follow canonical order).
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < entities.size(); ++i) {
        groups[uf.find(i)].push_back(i);
    }

    MergeResult result;
    std::map<std::string, std::string> id_remap;
    std::map<std::string, std::size_t> merged_index;  // new id -> position in result
    std::vector<std::pair<std::string, Entity>> merged;  // sort key (canonical) + entity
    for (const auto& [root, members] : groups) {
        (void)root;
        Entity out;
        out.type_label = entities[members.front()].type_label;
        std::vector<const Embedding*> embeddings;
        for (std::size_t idx : members) {
            const Entity& e = entities[idx];
            out.aliases.insert(e.aliases.begin(), e.aliases.end());
            out.provenance.insert(e.provenance.begin(), e.provenance.end());
            embeddings.push_back(&e.embedding);
        }
        out.canonical_name = *out.aliases.begin();
        out.id = entity_id_for(out.canonical_name, out.type_label);
        // renormalized mean of member embeddings
        out.embedding.values.assign(embeddings.front()->values.size(), 0.0);
        for (const Embedding* emb : embeddings) {
            for (std::size_t k = 0; k < emb->values.size(); ++k) {
                out.embedding.values[k] += emb->values[k];
            }
        }
        const double norm = out.embedding.norm();
        if (norm > 0.0) {
            for (double& v : out.embedding.values) v /= norm;
        }
        for (std::size_t idx : members) id_remap[entities[idx].id] = out.id;
        merged.emplace_back(out.canonical_name + "\x1f" + out.type_label, std::move(out));
    }
    std::sort(merged.begin(), merged.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [key, entity] : merged) {
        (void)key;
        merged_index[entity.id] = result.entities.size();
        result.entities.push_back(std::move(entity));
    }

    // Rewrite triples onto canonical ids.
    std::map<std::tuple<std::string, std::string, std::string, ChunkRef>, std::size_t> seen;
    for (const auto& t : triples) {
        auto subj = id_remap.find(t.subject);
        auto obj = id_remap.find(t.object);
        if (subj == id_remap.end() || obj == id_remap.end()) {
            throw_data("triple references unknown entity id '" +
                       (subj == id_remap.end() ? t.subject : t.object) + "'");
        }
        Triple rewritten{subj->second, t.predicate, obj->second, t.chunk_ref, t.confidence};
        if (rewritten.subject == rewritten.object &&
            rewritten.predicate.rfind("self_", 0) != 0) {
            continue;  // merge collapsed the endpoints
        }
        auto key = std::make_tuple(rewritten.subject, rewritten.predicate, rewritten.object,
                                   rewritten.chunk_ref);
        auto it = seen.find(key);
        if (it != seen.end()) {
            result.triples[it->second].confidence =
                std::max(result.triples[it->second].confidence, rewritten.confidence);
            continue;
        }
        seen.emplace(std::move(key), result.triples.size());
        result.triples.push_back(std::move(rewritten));
    }
    return result;
}

}  // namespace graphrag
