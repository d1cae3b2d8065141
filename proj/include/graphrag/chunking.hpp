#pragma once

#include <string>
#include <vector>

#include "graphrag/corpus.hpp"
#include "graphrag/providers.hpp"

namespace graphrag {

// Tokens are whitespace-delimited runs with punctuation attached. The
// inter-token whitespace is retained so detokenize() reproduces the input
// byte for byte.
struct TokenizedText {
    std::string leading;                // whitespace before the first token
    std::vector<std::string> tokens;
    std::vector<std::string> trailing;  // trailing[i] follows tokens[i]

    std::size_t size() const { return tokens.size(); }
};

TokenizedText tokenize(const std::string& text);
std::string detokenize(const TokenizedText& tokens);

struct Chunk {
    std::string doc_id;
    int index = 1;          // 1-based
    std::size_t start = 0;  // token span [start, end)
    std::size_t end = 0;
    std::string text;
};

// Sliding token windows: chunk i covers [(i-1)*stride, (i-1)*stride + window),
// clamped to the document length; windows are emitted while their start lies
// inside the document, so a shorter tail chunk is kept rather than dropped.
std::vector<Chunk> chunk_document(const Document& doc, int window_tokens, int stride_tokens);

inline const char* kContextSeparator = "\n---\n";

struct ContextualizedChunk {
    Chunk chunk;
    std::string context;
    std::string enriched_text;  // context + kContextSeparator + chunk.text
};

// Asks the generation provider for a short description linking the chunk to
// its document, truncated to context_budget_tokens, and prepends it.
ContextualizedChunk contextualize(const Document& doc, const Chunk& chunk,
                                  GenerationProvider& gen, int context_budget_tokens);

// First `budget` tokens of text (whitespace-preserving prefix).
std::string truncate_to_tokens(const std::string& text, int budget);

}  // namespace graphrag
