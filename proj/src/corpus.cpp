#include "graphrag/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "graphrag/errors.hpp"
#include "graphrag/hash.hpp"

namespace graphrag {

using nlohmann::json;

const char* to_string(SourceKind kind) {
    switch (kind) {
        case SourceKind::Image: return "image";
        case SourceKind::Scholar: return "scholar";
        case SourceKind::Patent: return "patent";
        case SourceKind::Wiki: return "wiki";
        case SourceKind::Web: return "web";
        case SourceKind::Synthesized: return "synthesized";
    }
    return "web";
}

std::optional<SourceKind> parse_source_kind(std::string_view name) {
    if (name == "image") return SourceKind::Image;
    if (name == "scholar") return SourceKind::Scholar;
    if (name == "patent") return SourceKind::Patent;
    if (name == "wiki") return SourceKind::Wiki;
    if (name == "web") return SourceKind::Web;
    if (name == "synthesized") return SourceKind::Synthesized;
    return std::nullopt;
}

namespace {

bool lowercase_ascii_key(const std::string& key) {
    return std::all_of(key.begin(), key.end(), [](unsigned char c) {
        return c < 0x80 && !std::isupper(c);
    });
}

void validate_document(const Document& doc, const std::string& where) {
    if (doc.id.empty()) {
        throw_data(where + ": document id must be non-empty");
    }
    if (doc.text.empty() && doc.source_kind != SourceKind::Image) {
        throw_data(where + ": document '" + doc.id + "' has empty text");
    }
    for (const auto& [key, value] : doc.metadata) {
        (void)value;
        if (!lowercase_ascii_key(key)) {
            throw_data(where + ": document '" + doc.id + "' metadata key '" + key +
                       "' is not lowercase ASCII");
        }
    }
}

Document parse_record(const json& rec, const std::string& where) {
    if (!rec.is_object()) throw_data(where + ": record is not an object");
    Document doc;
    if (!rec.contains("id") || !rec["id"].is_string()) {
        throw_data(where + ": missing string field 'id'");
    }
    doc.id = rec["id"].get<std::string>();
    if (!rec.contains("text") || !rec["text"].is_string()) {
        throw_data(where + ": missing string field 'text'");
    }
    doc.text = rec["text"].get<std::string>();
    if (rec.contains("source_kind")) {
        auto kind = parse_source_kind(rec["source_kind"].get<std::string>());
        if (!kind) {
            throw_data(where + ": unknown source_kind '" +
                       rec["source_kind"].get<std::string>() + "'");
        }
        doc.source_kind = *kind;
    }
    if (rec.contains("title")) doc.title = rec["title"].get<std::string>();
    if (rec.contains("metadata")) {
        for (const auto& [key, value] : rec["metadata"].items()) {
            doc.metadata[key] = value.get<std::string>();
        }
    }
    validate_document(doc, where);
    return doc;
}

Corpus ingest_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_data("cannot open corpus file: " + path);
    Corpus corpus;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded()) throw_data(where + ": malformed JSON record");
        corpus.append(parse_record(rec, where));
    }
    return corpus;
}

Corpus ingest_plain_dir(const std::string& path) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(path)) throw_data("not a directory: " + path);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    Corpus corpus;
    for (const auto& file : files) {
        std::ifstream in(file);
        std::ostringstream body;
        body << in.rdbuf();
        Document doc;
        doc.id = file.stem().string();
        doc.title = doc.id;
        doc.source_kind = SourceKind::Web;
        doc.text = body.str();
        doc.metadata["path"] = file.filename().string();
        validate_document(doc, file.string());
        corpus.append(std::move(doc));
    }
    return corpus;
}

}  // namespace

std::string to_record_line(const Document& doc) {
    json rec;
    rec["id"] = doc.id;
    rec["source_kind"] = to_string(doc.source_kind);
    rec["title"] = doc.title;
    rec["text"] = doc.text;
    rec["metadata"] = json::object();
    for (const auto& [key, value] : doc.metadata) rec["metadata"][key] = value;
    return rec.dump();
}

Corpus Corpus::ingest(const std::string& path, CorpusFormat format) {
    switch (format) {
        case CorpusFormat::Jsonl: return ingest_jsonl(path);
        case CorpusFormat::PlainDir: return ingest_plain_dir(path);
    }
    throw_internal("unreachable corpus format");
}

Corpus Corpus::load(const std::string& path) { return ingest_jsonl(path); }

void Corpus::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw_data("cannot write corpus file: " + path);
    for (const auto& doc : docs_) {
        out << to_record_line(doc) << '\n';
    }
}

bool Corpus::contains(const std::string& id) const { return find(id) != nullptr; }

const Document* Corpus::find(const std::string& id) const {
    for (const auto& doc : docs_) {
        if (doc.id == id) return &doc;
    }
    return nullptr;
}

void Corpus::append(Document doc) {
    validate_document(doc, "corpus");
    if (contains(doc.id)) {
        throw_data("duplicate document id '" + doc.id + "'");
    }
    docs_.push_back(std::move(doc));
}

std::uint64_t Corpus::checksum() const {
    std::uint64_t h = fnv1a64("corpus-v1");
    for (const auto& doc : docs_) {
        h = fnv1a64(to_record_line(doc), h);
        h = fnv1a64("\n", h);
    }
    return h;
}

Corpus store_document(const Corpus& corpus, Document doc) {
    Corpus next = corpus;
    next.append(std::move(doc));
    return next;
}

}  // namespace graphrag
