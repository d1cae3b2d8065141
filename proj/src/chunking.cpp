#include "graphrag/chunking.hpp"

#include <algorithm>

#include "graphrag/errors.hpp"
#include "graphrag/text.hpp"

namespace graphrag {

TokenizedText tokenize(const std::string& text) {
    TokenizedText out;
    std::string run;       // current whitespace run
    std::string token;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t start = pos;
        const std::uint32_t cp = utf8_decode(text, pos);
        const std::string_view piece = std::string_view(text).substr(start, pos - start);
        if (is_unicode_whitespace(cp)) {
            if (!token.empty()) {
                out.tokens.push_back(std::move(token));
                out.trailing.emplace_back();
                token.clear();
            }
            run.append(piece);
        } else {
            if (!run.empty()) {
                if (out.tokens.empty()) {
                    out.leading = std::move(run);
                } else {
                    out.trailing.back() = std::move(run);
                }
                run.clear();
            }
            token.append(piece);
        }
    }
    if (!token.empty()) {
        out.tokens.push_back(std::move(token));
        out.trailing.emplace_back();
    }
    if (!run.empty()) {
        if (out.tokens.empty()) {
            out.leading = std::move(run);
        } else {
            out.trailing.back() = std::move(run);
        }
    }
    return out;
}

std::string detokenize(const TokenizedText& tokens) {
    std::string out = tokens.leading;
    for (std::size_t i = 0; i < tokens.tokens.size(); ++i) {
        out += tokens.tokens[i];
        out += tokens.trailing[i];
    }
    return out;
}

namespace {

// Span text: tokens joined with the whitespace recorded between them; the
// whitespace after the final token is not part of the chunk.
std::string span_text(const TokenizedText& tokens, std::size_t start, std::size_t end) {
    std::string out;
    for (std::size_t i = start; i < end; ++i) {
        out += tokens.tokens[i];
        if (i + 1 < end) out += tokens.trailing[i].empty() ? " " : tokens.trailing[i];
    }
    return out;
}

}  // namespace

std::vector<Chunk> chunk_document(const Document& doc, int window_tokens, int stride_tokens) {
    if (window_tokens < 1) throw_data("chunk window must be >= 1");
    if (stride_tokens < 1 || stride_tokens > window_tokens) {
        throw_data("chunk stride must satisfy 1 <= stride <= window");
    }
    const TokenizedText tokens = tokenize(doc.text);
    const std::size_t length = tokens.size();
    const auto window = static_cast<std::size_t>(window_tokens);
    const auto stride = static_cast<std::size_t>(stride_tokens);

    std::vector<Chunk> chunks;
    for (std::size_t start = 0; start < length; start += stride) {
        Chunk chunk;
        chunk.doc_id = doc.id;
        chunk.index = static_cast<int>(chunks.size()) + 1;
        chunk.start = start;
        chunk.end = std::min(start + window, length);
        chunk.text = span_text(tokens, chunk.start, chunk.end);
        chunks.push_back(std::move(chunk));
    }
    return chunks;
}

std::string truncate_to_tokens(const std::string& text, int budget) {
    if (budget <= 0) return "";
    const TokenizedText tokens = tokenize(text);
    if (tokens.size() <= static_cast<std::size_t>(budget)) return text;
    return span_text(tokens, 0, static_cast<std::size_t>(budget));
}

ContextualizedChunk contextualize(const Document& doc, const Chunk& chunk,
                                  GenerationProvider& gen, int context_budget_tokens) {
    if (chunk.doc_id != doc.id) {
        throw_data("contextualize: chunk " + chunk.doc_id + ":" + std::to_string(chunk.index) +
                   " does not belong to document " + doc.id);
    }
    Prompt prompt;
    prompt.task = "chunk_context";
    prompt.headers = {{"title", doc.title.empty() ? doc.id : doc.title},
                      {"index", std::to_string(chunk.index)}};
    prompt.content = doc.text;

    std::string context;
    try {
        context = gen.generate(prompt.render(), context_budget_tokens);
    } catch (const Error& e) {
        throw Error(e.error_class(), std::string(e.what()) + " (while contextualizing " +
                                         chunk.doc_id + ":" + std::to_string(chunk.index) + ")");
    }
    context = truncate_to_tokens(context, context_budget_tokens);
    if (context.empty()) {
        throw_data("contextualize: provider returned empty context for " + chunk.doc_id + ":" +
                   std::to_string(chunk.index));
    }

    ContextualizedChunk out;
    out.chunk = chunk;
    out.context = context;
    out.enriched_text = context + kContextSeparator + chunk.text;
    return out;
}

}  // namespace graphrag
