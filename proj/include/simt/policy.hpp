#pragma once

#include <string>
#include <utility>
#include <vector>

#include "simt/core.hpp"

namespace simt {

// A token-level read schedule captured offline from a streaming translation
// model, keyed by sentence id. Traces are the file-based stand-in for a live
// adaptive policy model.
struct PolicyTrace {
    std::string sentence_id;
    TokenPolicy policy;
};

struct WordPolicyRecord {
    std::string sentence_id;
    WordPolicy policy;
};

// Fixed schedule over tokens: read k tokens, then alternate one generation
// with one read until the source is exhausted. Entry n is
// min(k + n - 1, source_tokens). Throws InvalidK when k < 1.
TokenPolicy wait_k_token_policy(int k, int source_tokens, int target_tokens);

// Same fixed schedule expressed over whole words: entry i is
// min(k + i - 1, source_words).
WordPolicy wait_k_word_policy(int k, int source_words, int target_words);

// Converts a token-level schedule into a word-level one. For each target
// word, take the read count at its final token, count the complete source
// words inside that token prefix (u), and read one more word: min(u+1, J).
// Throws LengthMismatch when the schedule length differs from the target
// token count or source_word_count differs from the source tokenization.
WordPolicy to_word_policy(const TokenPolicy& token_policy, const Tokenization& source,
                          const Tokenization& target, int source_word_count);

// Clamps each entry into [i-1+min_initial_reads, i-1+max_initial_reads],
// then by the source length. Suppresses outlier schedules from live models.
WordPolicy apply_boundary_restrictions(const WordPolicy& policy, const BoundaryConfig& cfg,
                                       int source_word_count);

// One repaired schedule entry: 1-based index, value before and after.
struct RepairEntry {
    int index = 0;
    int before = 0;
    int after = 0;

    friend bool operator==(const RepairEntry&, const RepairEntry&) = default;
};

struct RepairReport {
    std::vector<RepairEntry> entries;

    bool clean() const { return entries.empty(); }
};

// Clamps entries into [1, upper] and enforces a non-decreasing sequence via
// running maximum. Never rejects; every touched index lands in the report.
std::pair<std::vector<int>, RepairReport> validate_and_repair(const std::vector<int>& values,
                                                              int upper);

// Trace file: JSON Lines, one object per sentence: {"id": "...", "h": [int,...]}.
// Throws TraceFormatError with the offending line number on parse failure.
std::vector<PolicyTrace> load_policy_traces(const std::string& path);
void save_policy_traces(const std::string& path, const std::vector<PolicyTrace>& traces);

// Word policy file: JSON Lines, one object per sentence: {"id": "...", "g": [int,...]}.
std::vector<WordPolicyRecord> load_word_policies(const std::string& path);
void save_word_policies(const std::string& path, const std::vector<WordPolicyRecord>& records);

}  // namespace simt
