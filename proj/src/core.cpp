#include "simt/core.hpp"

#include <cctype>
#include <set>
#include <string>

namespace simt {

namespace {

bool has_whitespace(const std::string& word) {
    for (unsigned char c : word) {
        if (std::isspace(c)) return true;
    }
    return false;
}

void validate_words(const std::vector<std::string>& words, const char* side) {
    if (words.empty()) {
        throw ValidationError(std::string(side) + " side has no words");
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].empty()) {
            throw ValidationError(std::string(side) + " word " + std::to_string(i + 1) + " is empty");
        }
        if (has_whitespace(words[i])) {
            throw ValidationError(std::string(side) + " word " + std::to_string(i + 1) +
                                  " contains whitespace: '" + words[i] + "'");
        }
    }
}

void validate_read_counts(const std::vector<int>& counts, int upper, const char* what) {
    if (counts.empty()) {
        throw ValidationError(std::string(what) + " is empty");
    }
    int prev = 1;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        int v = counts[i];
        if (v < 1 || v > upper) {
            throw ValidationError(std::string(what) + " entry " + std::to_string(i + 1) + " = " +
                                  std::to_string(v) + " outside [1, " + std::to_string(upper) + "]");
        }
        if (v < prev) {
            throw ValidationError(std::string(what) + " decreases at entry " + std::to_string(i + 1) +
                                  " (" + std::to_string(prev) + " -> " + std::to_string(v) + ")");
        }
        prev = v;
    }
}

}  // namespace

void validate(const SentencePair& pair) {
    validate_words(pair.source_words, "source");
    validate_words(pair.target_words, "target");
}

void validate(const Tokenization& tok) {
    const std::size_t n = tok.tokens.size();
    if (n == 0) {
        throw ValidationError("tokenization has no tokens");
    }
    if (tok.word_of_token.size() != n || tok.is_word_final.size() != n) {
        throw ValidationError("tokenization arrays have mismatched lengths");
    }
    if (tok.word_of_token.front() != 1) {
        throw ValidationError("first token must belong to word 1");
    }
    for (std::size_t t = 0; t < n; ++t) {
        if (t + 1 < n) {
            int step = tok.word_of_token[t + 1] - tok.word_of_token[t];
            if (step != 0 && step != 1) {
                throw ValidationError("word_of_token must be non-decreasing with unit steps at token " +
                                      std::to_string(t + 1));
            }
        }
        bool last_of_word = (t + 1 == n) || (tok.word_of_token[t + 1] == tok.word_of_token[t] + 1);
        if (tok.is_word_final[t] != last_of_word) {
            throw ValidationError("is_word_final inconsistent at token " + std::to_string(t + 1));
        }
    }
}

void validate(const TokenPolicy& policy, int source_token_count) {
    validate_read_counts(policy.read_counts, source_token_count, "token policy");
}

void validate(const WordPolicy& policy, int source_word_count) {
    validate_read_counts(policy.read_counts, source_word_count, "word policy");
}

void validate(const BoundaryConfig& cfg) {
    if (cfg.min_initial_reads < 1) {
        throw ValidationError("min_initial_reads must be >= 1, got " +
                              std::to_string(cfg.min_initial_reads));
    }
    if (cfg.max_initial_reads < cfg.min_initial_reads) {
        throw ValidationError("max_initial_reads (" + std::to_string(cfg.max_initial_reads) +
                              ") must be >= min_initial_reads (" +
                              std::to_string(cfg.min_initial_reads) + ")");
    }
}

void validate(const AlignmentSet& alignment, int source_word_count, int target_word_count) {
    std::set<std::pair<int, int>> seen;
    for (const auto& e : alignment.edges) {
        if (e.source < 1 || e.source > source_word_count || e.target < 1 || e.target > target_word_count) {
            throw ValidationError("alignment edge " + std::to_string(e.source) + "-" +
                                  std::to_string(e.target) + " outside [1," +
                                  std::to_string(source_word_count) + "] x [1," +
                                  std::to_string(target_word_count) + "]");
        }
        if (!seen.insert({e.source, e.target}).second) {
            throw ValidationError("duplicate alignment edge " + std::to_string(e.source) + "-" +
                                  std::to_string(e.target));
        }
    }
}

}  // namespace simt
