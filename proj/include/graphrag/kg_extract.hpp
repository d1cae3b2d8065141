#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "graphrag/chunking.hpp"
#include "graphrag/providers.hpp"

namespace graphrag {

struct ChunkRef {
    std::string doc_id;
    int index = 0;

    auto operator<=>(const ChunkRef&) const = default;
    std::string str() const { return doc_id + ":" + std::to_string(index); }
};

struct EntityMention {
    std::string surface;
    std::string type_label;
    ChunkRef chunk_ref;

    bool operator==(const EntityMention&) const = default;
};

struct Entity {
    std::string id;
    std::string canonical_name;
    std::set<std::string> aliases;
    std::string type_label;
    Embedding embedding;
    std::set<ChunkRef> provenance;
};

struct Triple {
    std::string subject;  // entity id
    std::string predicate;
    std::string object;   // entity id
    ChunkRef chunk_ref;
    double confidence = 1.0;

    bool operator==(const Triple&) const = default;
};

// Stable identifier derived from the normalized name and type, so the same
// concept maps to the same id regardless of extraction order.
std::string entity_id_for(const std::string& name, const std::string& type_label);

// NER over the enriched chunk. The provider answers with one line per
// mention (`ENTITY<TAB>surface<TAB>type`) or `NONE`; anything else raises an
// extraction-format error so the caller can skip the chunk and continue.
std::vector<EntityMention> extract_entities(const ContextualizedChunk& cc, GenerationProvider& gen);

// Relation extraction over entity pairs in the same chunk, capped at
// max_triples (highest confidence first, ties by provider order). Triple
// endpoints are entity ids derived from the given mentions; lines naming
// unknown mentions are discarded.
std::vector<Triple> extract_relations(const ContextualizedChunk& cc,
                                      const std::vector<EntityMention>& mentions,
                                      GenerationProvider& gen, int max_triples);

// Levenshtein distance over code points.
int levenshtein(const std::string& a, const std::string& b);

// 1 - d_lev / max(|a|,|b|) on normalized strings; 1.0 when both are empty.
double string_similarity(const std::string& a, const std::string& b);

struct MergeResult {
    std::vector<Entity> entities;
    std::vector<Triple> triples;
};

// Merges duplicate entities: a pair is a duplicate when cosine similarity and
// string similarity both clear their thresholds and the raw edit distance is
// within max_edit_distance; pairs are only considered within one type_label.
// Merging takes the transitive closure via union-find. The merged entity
// keeps the lexicographically smallest alias as canonical name, the union of
// aliases and provenance, and the renormalized mean embedding. Triples are
// rewritten onto canonical ids; exact duplicates collapse (keeping the
// highest confidence) and accidental self-loops are dropped.
MergeResult merge_duplicates(const std::vector<Entity>& entities,
                             const std::vector<Triple>& triples, double tau_sim, double tau_str,
                             int max_edit_distance);

// Groups mentions into entities keyed by (normalized surface, type); each
// entity is embedded once from its normalized name.
std::vector<Entity> build_entities(const std::vector<EntityMention>& mentions,
                                   EmbeddingProvider& embed);

}  // namespace graphrag
