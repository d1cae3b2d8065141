#include "graphrag/mock_providers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "graphrag/errors.hpp"
#include "graphrag/hash.hpp"
#include "graphrag/text.hpp"

namespace graphrag {

using nlohmann::json;

// ---------------------------------------------------------------------------
// MockEmbeddingProvider
// ---------------------------------------------------------------------------

MockEmbeddingProvider::MockEmbeddingProvider(std::uint64_t seed, int dim)
    : seed_(seed), dim_(dim) {
    if (dim <= 0) throw_config("embedding dim must be positive");
}

namespace {

Embedding hash_tokens(const std::vector<std::string>& tokens, std::uint64_t seed, int dim) {
    Embedding emb;
    emb.values.assign(static_cast<std::size_t>(dim), 0.0);
    if (tokens.empty()) {
        // Keep empty inputs representable: a single pseudo-token.
        std::uint64_t h = fnv1a64("", seed * 0x9e3779b97f4a7c15ULL + 1);
        emb.values[h % static_cast<std::uint64_t>(dim)] += 1.0;
    } else {
        for (const auto& token : tokens) {
            std::uint64_t h = fnv1a64(token, seed * 0x9e3779b97f4a7c15ULL + 1);
            emb.values[h % static_cast<std::uint64_t>(dim)] += 1.0;
        }
    }
    double n = emb.norm();
    for (double& v : emb.values) v /= n;
    return emb;
}

}  // namespace

Embedding MockEmbeddingProvider::embed_text(const std::string& text) {
    return hash_tokens(lower_tokens(text), seed_, dim_);
}

Embedding MockEmbeddingProvider::embed_image(const std::string& image_ref) {
    if (image_ref.empty()) throw_data("embed_image: unresolvable image ref (empty)");
    // Test shim: the file name stands in for image content. Tokens come from
    // the basename with its extension dropped, split on non-alphanumerics.
    std::string name = image_ref;
    if (auto slash = name.find_last_of("/\\"); slash != std::string::npos) {
        name = name.substr(slash + 1);
    }
    if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0) {
        name = name.substr(0, dot);
    }
    std::vector<std::string> tokens;
    std::string current;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(current);
    return hash_tokens(tokens, seed_, dim_);
}

// ---------------------------------------------------------------------------
// Lexicon
// ---------------------------------------------------------------------------

const std::vector<LexiconEntry>& default_entity_lexicon() {
    static const std::vector<LexiconEntry> lexicon = {
        // refining
        {"crude oil", "Material"},
        {"desalter", "Equipment"},
        {"atmospheric distillation unit", "Equipment"},
        {"distillation column", "Equipment"},
        {"vacuum distillation column", "Equipment"},
        {"naphtha", "Material"},
        {"gasoline", "Material"},
        {"kerosene", "Material"},
        {"diesel", "Material"},
        {"gas oil", "Material"},
        {"residue", "Material"},
        {"fired heater", "Equipment"},
        {"overhead condenser", "Equipment"},
        {"reflux drum", "Equipment"},
        {"catalytic reformer", "Equipment"},
        {"hydrotreater", "Equipment"},
        {"sulfur", "Material"},
        // lithium
        {"spodumene", "Material"},
        {"spodumene concentrate", "Material"},
        {"lithium hydroxide", "Chemical"},
        {"lithium carbonate", "Chemical"},
        {"lithium sulfate", "Chemical"},
        {"sulfuric acid", "Chemical"},
        {"rotary kiln", "Equipment"},
        {"acid roaster", "Equipment"},
        {"leaching tank", "Equipment"},
        {"impurity removal circuit", "Process"},
        {"crystallizer", "Equipment"},
        {"centrifuge", "Equipment"},
        {"belt dryer", "Equipment"},
        {"battery cathode plant", "Equipment"},
        // ammonia
        {"natural gas", "Material"},
        {"steam reformer", "Equipment"},
        {"synthesis gas", "Material"},
        {"hydrogen", "Chemical"},
        {"nitrogen", "Chemical"},
        {"ammonia", "Chemical"},
        {"synthesis converter", "Equipment"},
        {"ammonia converter", "Equipment"},
        {"syngas compressor", "Equipment"},
        {"refrigeration loop", "Process"},
        {"urea plant", "Equipment"},
        {"carbon dioxide", "Chemical"},
        // water treatment
        {"raw water", "Material"},
        {"coagulant", "Chemical"},
        {"flocculation basin", "Equipment"},
        {"clarifier", "Equipment"},
        {"sand filter", "Equipment"},
        {"activated carbon filter", "Equipment"},
        {"chlorine", "Chemical"},
        {"disinfection stage", "Process"},
        {"reverse osmosis membrane", "Equipment"},
        {"permeate", "Material"},
        {"brine reject", "Material"},
        {"potable water", "Material"},
        // polymers
        {"ethylene", "Chemical"},
        {"propylene", "Chemical"},
        {"steam cracker", "Equipment"},
        {"polymerization reactor", "Equipment"},
        {"polyethylene", "Material"},
        {"polypropylene", "Material"},
        {"catalyst slurry", "Material"},
        {"extruder", "Equipment"},
        {"pellet silo", "Equipment"},
        {"quench tower", "Equipment"},
        // pharma / fermentation
        {"fermenter", "Equipment"},
        {"seed culture", "Material"},
        {"nutrient broth", "Material"},
        {"harvest tank", "Equipment"},
        {"sterile filter", "Equipment"},
        {"chromatography column", "Equipment"},
        {"active ingredient", "Chemical"},
        {"buffer solution", "Chemical"},
        {"lyophilizer", "Equipment"},
        // cement
        {"limestone", "Material"},
        {"raw mill", "Equipment"},
        {"preheater tower", "Equipment"},
        {"clinker", "Material"},
        {"cement kiln", "Equipment"},
        {"clinker cooler", "Equipment"},
        {"gypsum", "Material"},
        {"cement mill", "Equipment"},
        // shared utilities
        {"feed pump", "Equipment"},
        {"booster pump", "Equipment"},
        {"control valve", "Equipment"},
        {"relief valve", "Equipment"},
        {"heat exchanger", "Equipment"},
        {"reboiler", "Equipment"},
        {"steam boiler", "Equipment"},
        {"cooling tower", "Equipment"},
        {"cooling water", "Utility"},
        {"steam header", "Utility"},
        {"instrument air", "Utility"},
        {"flare stack", "Equipment"},
        {"storage tank", "Equipment"},
        {"surge drum", "Equipment"},
        {"knockout drum", "Equipment"},
        {"level controller", "Instrument"},
        {"pressure transmitter", "Instrument"},
        {"temperature controller", "Instrument"},
        {"flow meter", "Instrument"},
        {"emergency shutdown system", "Instrument"},
    };
    return lexicon;
}

// ---------------------------------------------------------------------------
// MockGenerationProvider
// ---------------------------------------------------------------------------

MockGenerationProvider::MockGenerationProvider(std::uint64_t seed, std::vector<LexiconEntry> lexicon)
    : seed_(seed), lexicon_(std::move(lexicon)) {
    // Longest phrase wins when matches overlap.
    std::stable_sort(lexicon_.begin(), lexicon_.end(), [](const auto& a, const auto& b) {
        return a.phrase.size() > b.phrase.size();
    });
}

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

struct Match {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string surface;
    std::string type_label;
};

// Case-insensitive phrase match at word boundaries; longest-first,
// left-to-right, non-overlapping.
std::vector<Match> match_phrases(const std::string& text,
                                 const std::vector<LexiconEntry>& phrases) {
    const std::string lowered = to_lower_ascii(text);
    std::vector<Match> matches;
    std::size_t i = 0;
    while (i < lowered.size()) {
        if (!is_word_char(lowered[i])) {
            ++i;
            continue;
        }
        if (i > 0 && is_word_char(lowered[i - 1])) {
            ++i;
            continue;
        }
        bool found = false;
        for (const auto& entry : phrases) {
            const std::string needle = to_lower_ascii(entry.phrase);
            if (lowered.compare(i, needle.size(), needle) != 0) continue;
            const std::size_t end = i + needle.size();
            if (end < lowered.size() && is_word_char(lowered[end])) continue;
            matches.push_back({i, end, text.substr(i, needle.size()), entry.type_label});
            i = end;
            found = true;
            break;
        }
        if (!found) ++i;
    }
    return matches;
}

const std::set<std::string>& stopwords() {
    static const std::set<std::string> words = {
        "the", "a",  "an",   "is",   "are",  "was",  "were", "be",   "been", "being",
        "of",  "to", "in",   "on",   "at",   "by",   "with", "and",  "or",   "for",
        "as",  "it", "its",  "this", "that", "then", "than", "into", "from", "their",
    };
    return words;
}

std::string strip_punct(const std::string& token) {
    std::size_t b = 0;
    std::size_t e = token.size();
    while (b < e && !is_word_char(token[b])) ++b;
    while (e > b && !is_word_char(token[e - 1])) --e;
    return token.substr(b, e - b);
}

std::string echo_tokens(const std::string& content, int budget) {
    std::vector<std::string> tokens;
    std::istringstream in(content);
    std::string token;
    while (static_cast<int>(tokens.size()) < budget && in >> token) tokens.push_back(token);
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

std::string find_header(const Prompt& prompt, const std::string& key, const std::string& fallback = "") {
    for (const auto& [k, v] : prompt.headers) {
        if (k == key) return v;
    }
    return fallback;
}

std::string format_confidence(double conf) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.4f", conf);
    return buf;
}

std::string truncate_tokens(const std::string& text, int max_tokens) {
    if (max_tokens <= 0) return text;
    int count = 0;
    bool in_token = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const bool ws = std::isspace(static_cast<unsigned char>(text[i])) != 0;
        if (!ws && !in_token) {
            ++count;
            if (count > max_tokens) return text.substr(0, i);
        }
        in_token = !ws;
    }
    return text;
}

}  // namespace

std::string MockGenerationProvider::generate(const std::string& rendered, int max_tokens) {
    if (rendered.empty()) throw_internal("generate: empty prompt");
    const Prompt prompt = Prompt::parse(rendered);
    const std::string digest = hex_digest8(prompt.content);
    const int budget = max_tokens > 0 ? max_tokens : 64;

    std::string out;
    if (prompt.task == "chunk_context") {
        // Template: Context for <title> part <index> [chunk_context:<digest>]
        out = "Context for " + find_header(prompt, "title", "untitled") + " part " +
              find_header(prompt, "index", "0") + " [chunk_context:" + digest + "]";
    } else if (prompt.task == "extract_entities") {
        std::ostringstream lines;
        for (const auto& m : match_phrases(prompt.content, lexicon_)) {
            lines << "ENTITY\t" << m.surface << '\t' << m.type_label << '\n';
        }
        out = lines.str();
        if (out.empty()) out = "NONE";
        return out;  // structured output is never token-truncated
    } else if (prompt.task == "extract_relations") {
        std::vector<LexiconEntry> mention_phrases;
        for (const auto& [key, value] : prompt.headers) {
            if (key != "mention") continue;
            std::size_t bar = value.find('|');
            mention_phrases.push_back({value.substr(0, bar),
                                       bar == std::string::npos ? "Entity" : value.substr(bar + 1)});
        }
        std::stable_sort(mention_phrases.begin(), mention_phrases.end(),
                         [](const auto& a, const auto& b) { return a.phrase.size() > b.phrase.size(); });
        const auto matches = match_phrases(prompt.content, mention_phrases);
        std::ostringstream lines;
        for (std::size_t i = 0; i + 1 < matches.size(); ++i) {
            const auto& lhs = matches[i];
            const auto& rhs = matches[i + 1];
            const std::string between = prompt.content.substr(lhs.end, rhs.begin - lhs.end);
            if (between.find_first_of(".!?;") != std::string::npos) continue;  // sentence break
            std::istringstream words(between);
            std::string word;
            std::string predicate;
            int gap = 0;
            while (words >> word) {
                ++gap;
                if (predicate.empty()) {
                    std::string bare = strip_punct(to_lower_ascii(word));
                    if (!bare.empty() && stopwords().count(bare) == 0) predicate = bare;
                }
            }
            if (predicate.empty()) continue;
            lines << "TRIPLE\t" << lhs.surface << '\t' << predicate << '\t' << rhs.surface << '\t'
                  << format_confidence(4.0 / (4.0 + gap)) << '\n';
        }
        out = lines.str();
        if (out.empty()) out = "NONE";
        return out;
    } else if (prompt.task == "community_summary") {
        out = "Community summary [" + digest + "]: " + echo_tokens(prompt.content, budget);
    } else if (prompt.task == "answer" || prompt.task == "flat_answer") {
        out = "Answer [" + digest + "] to '" + find_header(prompt, "query") +
              "': " + echo_tokens(prompt.content, budget);
    } else if (prompt.task == "subagent_synthesis") {
        out = "Synthesis " + find_header(prompt, "kind", "web") + " [" + digest +
              "]: " + echo_tokens(prompt.content, budget);
    } else if (prompt.task == "aggregate") {
        out = "Aggregate report [" + digest + "]: " + echo_tokens(prompt.content, budget);
    } else if (prompt.task == "refine") {
        out = "Revision " + find_header(prompt, "iteration", "1") + " [" + digest +
              "]: " + echo_tokens(prompt.content, budget);
    } else {
        out = "[" + prompt.task + ":" + digest + "] " + echo_tokens(prompt.content, budget);
    }
    (void)seed_;
    return truncate_tokens(out, max_tokens);
}

// ---------------------------------------------------------------------------
// MockSearchProvider
// ---------------------------------------------------------------------------

MockSearchProvider::MockSearchProvider(std::string fixture_dir, std::uint64_t seed)
    : fixture_dir_(std::move(fixture_dir)), embedder_(seed) {}

const std::vector<Document>& MockSearchProvider::index_for(SourceKind kind) {
    const std::string key = to_string(kind);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    if (!manifest_loaded_) {
        if (fixture_dir_.empty()) throw_config("mock search provider requires a fixture_dir");
        const std::string manifest_path = fixture_dir_ + "/manifest.json";
        std::ifstream in(manifest_path);
        if (!in) throw_config("cannot open search fixture manifest: " + manifest_path);
        json manifest = json::parse(in, nullptr, false);
        if (manifest.is_discarded() || !manifest.is_object()) {
            throw_config("malformed search fixture manifest: " + manifest_path);
        }
        for (const auto& [k, v] : manifest.items()) {
            if (!parse_source_kind(k)) {
                throw_config("manifest names unknown source_kind '" + k + "'");
            }
            manifest_[k] = v.get<std::string>();
        }
        manifest_loaded_ = true;
    }

    std::vector<Document> docs;
    auto entry = manifest_.find(key);
    if (entry != manifest_.end()) {
        docs = Corpus::load(fixture_dir_ + "/" + entry->second).documents();
    }
    return cache_.emplace(key, std::move(docs)).first->second;
}

std::vector<Document> MockSearchProvider::search(SourceKind kind, const std::string& query,
                                                 int limit) {
    if (limit < 1) throw_data("search: limit must be >= 1");
    const auto& index = index_for(kind);
    const Embedding query_emb = embedder_.embed_text(query);

    std::vector<std::pair<double, const Document*>> scored;
    scored.reserve(index.size());
    for (const auto& doc : index) {
        scored.emplace_back(cosine(query_emb, embedder_.embed_text(doc.title + " " + doc.text)),
                            &doc);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second->id < b.second->id;
    });

    std::vector<Document> out;
    for (const auto& [score, doc] : scored) {
        if (static_cast<int>(out.size()) >= limit) break;
        Document copy = *doc;
        copy.source_kind = kind;
        out.push_back(std::move(copy));
    }
    return out;
}

// ---------------------------------------------------------------------------
// MockJudgeProvider
// ---------------------------------------------------------------------------

MockJudgeProvider::MockJudgeProvider(std::uint64_t seed, double accept_threshold)
    : seed_(seed), accept_threshold_(accept_threshold) {}

Feedback MockJudgeProvider::judge(const std::string& query, const std::string& answer) {
    (void)seed_;
    const auto answer_tokens = lower_tokens(answer);
    const std::set<std::string> ua(answer_tokens.begin(), answer_tokens.end());
    const auto query_tokens = lower_tokens(query);
    const std::set<std::string> uq(query_tokens.begin(), query_tokens.end());

    std::size_t inter = 0;
    for (const auto& t : ua) inter += uq.count(t);
    const std::size_t uni = ua.size() + uq.size() - inter;

    const double n = static_cast<double>(answer_tokens.size());
    const bool empty = answer_tokens.empty();
    const double coverage = uq.empty() ? 0.0 : static_cast<double>(inter) / static_cast<double>(uq.size());
    const double jaccard = uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
    const double distinct = empty ? 0.0 : static_cast<double>(ua.size()) / n;

    auto clamp4 = [](double v) { return std::max(0.0, std::min(4.0, v)); };

    Feedback fb;
    fb.scores["helpfulness"] = empty ? 0.0 : clamp4(4.0 * coverage);
    fb.scores["correctness"] = empty ? 0.0 : clamp4(4.0 * jaccard);
    fb.scores["coherence"] = empty ? 0.0 : clamp4(4.0 * distinct);
    fb.scores["complexity"] = clamp4(4.0 * std::min(1.0, n / 32.0));
    fb.scores["verbosity"] = clamp4(4.0 * std::min(1.0, n / 48.0));
    fb.accept = fb.min_score() >= accept_threshold_;
    std::ostringstream comments;
    comments << "overlap " << inter << "/" << uq.size() << " query tokens; " << answer_tokens.size()
             << " answer tokens";
    fb.comments = comments.str();
    return fb;
}

}  // namespace graphrag
