#pragma once

#include <stdexcept>
#include <string>
#include <vector>

// Shared domain types for the simultaneous-translation toolkit.
//
// Indexing convention: word and token indices are 1-based throughout the
// in-memory data model. File formats that are 0-based (pharaoh alignments)
// are converted at the parsing boundary and documented there.

namespace simt {

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptySentence : public Error { public: using Error::Error; };
class MapMismatch : public Error { public: using Error::Error; };
class IndexOutOfRange : public Error { public: using Error::Error; };
class InvalidK : public Error { public: using Error::Error; };
class LengthMismatch : public Error { public: using Error::Error; };
class TraceFormatError : public Error { public: using Error::Error; };
class TemplateError : public Error { public: using Error::Error; };
class TooFewSentences : public Error { public: using Error::Error; };
class SampleTooLarge : public Error { public: using Error::Error; };
class UndefinedMetric : public Error { public: using Error::Error; };
class ValidationError : public Error { public: using Error::Error; };

// Unreadable files, malformed input files, bad flag combinations.
class IoError : public Error { public: using Error::Error; };
class FileFormatError : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };

// ---------------------------------------------------------------------------
// Sentence pair

struct SentencePair {
    std::string id;
    std::vector<std::string> source_words;
    std::vector<std::string> target_words;

    int source_length() const { return static_cast<int>(source_words.size()); }
    int target_length() const { return static_cast<int>(target_words.size()); }
};

// Both sides non-empty; words non-empty and free of internal whitespace.
void validate(const SentencePair& pair);

// ---------------------------------------------------------------------------
// Tokenization
//
// A token sequence for one sentence plus the token -> word boundary maps.
// word_of_token[t] is the 1-based index of the word that token t (0-based
// position) belongs to; is_word_final[t] marks the last token of each word.

struct Tokenization {
    std::vector<std::string> tokens;
    std::vector<int> word_of_token;
    std::vector<bool> is_word_final;

    int token_count() const { return static_cast<int>(tokens.size()); }
    int word_count() const { return tokens.empty() ? 0 : word_of_token.back(); }
};

// word_of_token must start at 1, be non-decreasing with unit steps, and
// is_word_final must mark exactly the last token of every word.
void validate(const Tokenization& tok);

// ---------------------------------------------------------------------------
// Policies
//
// A policy is a read schedule: entry n is the number of source units read
// when the n-th target unit is generated. TokenPolicy is over subword
// tokens, WordPolicy over whole words.

struct TokenPolicy {
    std::vector<int> read_counts;

    int length() const { return static_cast<int>(read_counts.size()); }
};

struct WordPolicy {
    std::vector<int> read_counts;

    int length() const { return static_cast<int>(read_counts.size()); }
};

// Entries within [1, source_token_count] and non-decreasing.
void validate(const TokenPolicy& policy, int source_token_count);

// Entries within [1, source_word_count] and non-decreasing.
void validate(const WordPolicy& policy, int source_word_count);

// ---------------------------------------------------------------------------
// Boundary restriction configuration
//
// min_initial_reads / max_initial_reads bound the number of source words
// that may be read before emitting the first target word; for target word i
// the bounds shift to i-1+min and i-1+max (then clamp by source length).

struct BoundaryConfig {
    int min_initial_reads = 1;
    int max_initial_reads = 1;
};

// 1 <= min_initial_reads <= max_initial_reads.
void validate(const BoundaryConfig& cfg);

// ---------------------------------------------------------------------------
// Word alignments

struct AlignmentEdge {
    int source = 0;  // 1-based source word index
    int target = 0;  // 1-based target word index

    friend bool operator==(const AlignmentEdge&, const AlignmentEdge&) = default;
    friend auto operator<=>(const AlignmentEdge&, const AlignmentEdge&) = default;
};

struct AlignmentSet {
    std::vector<AlignmentEdge> edges;
};

// Indices within [1,J] x [1,I], no duplicate edges.
void validate(const AlignmentSet& alignment, int source_word_count, int target_word_count);

}  // namespace simt
