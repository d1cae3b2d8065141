#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace graphrag {

enum class SourceKind { Image, Scholar, Patent, Wiki, Web, Synthesized };

const char* to_string(SourceKind kind);
std::optional<SourceKind> parse_source_kind(std::string_view name);

struct Document {
    std::string id;
    SourceKind source_kind = SourceKind::Web;
    std::string title;
    std::string text;
    std::map<std::string, std::string> metadata;

    bool operator==(const Document&) const = default;
};

enum class CorpusFormat { Jsonl, PlainDir };

// Ordered, append-only document store. Persisted as one JSON record per line;
// the checksum covers the canonical serialization of every document.
class Corpus {
public:
    Corpus() = default;

    static Corpus ingest(const std::string& path, CorpusFormat format);
    static Corpus load(const std::string& path);
    void save(const std::string& path) const;

    const std::vector<Document>& documents() const { return docs_; }
    std::size_t size() const { return docs_.size(); }
    bool contains(const std::string& id) const;
    const Document* find(const std::string& id) const;

    // Validates invariants and rejects duplicate ids.
    void append(Document doc);

    std::uint64_t checksum() const;

private:
    std::vector<Document> docs_;
};

Corpus store_document(const Corpus& corpus, Document doc);

// Canonical single-line serialization used for persistence and checksums.
std::string to_record_line(const Document& doc);

}  // namespace graphrag
