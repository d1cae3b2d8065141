#include "graphrag/providers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "graphrag/config.hpp"
#include "graphrag/errors.hpp"
#include "graphrag/http_providers.hpp"
#include "graphrag/mock_providers.hpp"

namespace graphrag {

const std::vector<std::string> kRubricKeys = {
    "helpfulness", "correctness", "coherence", "complexity", "verbosity",
};

double Embedding::norm() const {
    double sum = 0.0;
    for (double v : values) sum += v * v;
    return std::sqrt(sum);
}

double cosine(const Embedding& a, const Embedding& b) {
    if (a.dim() != b.dim()) {
        throw_internal("cosine: embedding dims differ (" + std::to_string(a.dim()) + " vs " +
                       std::to_string(b.dim()) + ")");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) dot += a.values[i] * b.values[i];
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (na * nb);
}

double Feedback::min_score() const {
    double lo = 4.0;
    for (const auto& key : kRubricKeys) {
        auto it = scores.find(key);
        lo = std::min(lo, it == scores.end() ? 0.0 : it->second);
    }
    return lo;
}

std::string Prompt::render() const {
    std::ostringstream out;
    out << "#task " << task << '\n';
    for (const auto& [key, value] : headers) {
        out << '#' << key << ' ' << value << '\n';
    }
    out << '\n' << content;
    return out.str();
}

Prompt Prompt::parse(const std::string& rendered) {
    Prompt prompt;
    std::size_t pos = 0;
    bool first = true;
    while (pos < rendered.size()) {
        std::size_t eol = rendered.find('\n', pos);
        if (eol == std::string::npos) eol = rendered.size();
        std::string line = rendered.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) break;  // blank line ends the header block
        if (line[0] != '#') {
            // No header block; treat the whole input as content.
            prompt.content = rendered;
            return prompt;
        }
        std::size_t space = line.find(' ');
        std::string key = line.substr(1, space == std::string::npos ? std::string::npos : space - 1);
        std::string value = space == std::string::npos ? "" : line.substr(space + 1);
        if (first && key == "task") {
            prompt.task = value;
        } else {
            prompt.headers.emplace_back(key, value);
        }
        first = false;
    }
    if (pos < rendered.size()) prompt.content = rendered.substr(pos);
    return prompt;
}

ProviderSet make_providers(const RunConfig& config) {
    ProviderSet set;

    const auto& emb = config.embedding;
    if (emb.kind == ProviderConfig::Kind::Mock) {
        set.embedding = std::make_shared<MockEmbeddingProvider>(emb.seed, emb.dim);
    } else {
        set.embedding = std::make_shared<HttpEmbeddingProvider>(emb);
    }

    const auto& gen = config.generation;
    if (gen.kind == ProviderConfig::Kind::Mock) {
        set.generation = std::make_shared<MockGenerationProvider>(gen.seed);
    } else {
        set.generation = std::make_shared<HttpGenerationProvider>(gen);
    }

    const auto& search = config.search;
    if (search.kind == ProviderConfig::Kind::Mock) {
        set.search = std::make_shared<MockSearchProvider>(search.fixture_dir, search.seed);
    } else {
        set.search = std::make_shared<HttpSearchProvider>(search);
    }

    const auto& judge = config.judge;
    if (judge.kind == ProviderConfig::Kind::Mock) {
        set.judge = std::make_shared<MockJudgeProvider>(judge.seed, judge.accept_threshold);
    } else {
        set.judge = std::make_shared<HttpJudgeProvider>(judge);
    }

    return set;
}

}  // namespace graphrag
