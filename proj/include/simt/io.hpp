#pragma once

#include <string>
#include <vector>

#include "simt/core.hpp"

namespace simt {

// Reads a UTF-8 text file into lines, stripping trailing '\r'.
// Throws IoError when the file cannot be opened.
std::vector<std::string> read_lines(const std::string& path);

// Two aligned one-sentence-per-line files. Sentence ids are 1-based line
// numbers rendered as decimal strings. Throws LengthMismatch when the files
// have different line counts and FileFormatError for empty lines.
std::vector<SentencePair> load_parallel_corpus(const std::string& source_path,
                                               const std::string& target_path);

// JSON Lines corpus: one object per line, {"id": "...", "src": "...", "tgt": "..."}.
std::vector<SentencePair> load_corpus_jsonl(const std::string& path);

// Deterministic sentence-id ordering used for outputs: ids that are pure
// decimal digits compare numerically, everything else lexicographically.
bool id_less(const std::string& a, const std::string& b);

// "name version (revision)" string embedded in reports.
std::string version_string();

}  // namespace simt
