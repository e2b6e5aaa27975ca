#pragma once

#include <string>
#include <vector>

#include "simt/core.hpp"

namespace simt {

// Deterministic tokenization schemes. The fixed-chunk and external-map
// variants stand in for real subword tokenizers so that token/word
// granularity mismatches can be exercised without a trained vocabulary.
struct TokenizerScheme {
    enum class Kind { Whitespace, FixedChunk, ExternalMap };

    Kind kind = Kind::Whitespace;
    int chunk_size = 0;                // FixedChunk: max Unicode scalars per token
    std::vector<int> tokens_per_word;  // ExternalMap: one entry per word of one sentence

    static TokenizerScheme whitespace();
    static TokenizerScheme fixed_chunk(int max_scalars);  // throws ConfigError if < 1
    static TokenizerScheme external_map(std::vector<int> tokens_per_word);
};

// Maximal non-whitespace runs of text, in order.
// Throws EmptySentence when text contains no words.
std::vector<std::string> split_words(const std::string& text);

// Tokenize a word sequence. Concatenating the tokens of each word always
// reconstructs that word.
//   Whitespace:  one token per word.
//   FixedChunk:  each word split into chunks of at most chunk_size scalars.
//   ExternalMap: word w split into tokens_per_word[w] near-even pieces;
//                throws MapMismatch when the map length differs from the
//                word count or a word has fewer scalars than tokens.
Tokenization tokenize(const std::vector<std::string>& words, const TokenizerScheme& scheme);

// Number of words whose every token lies within the first n_tokens tokens.
// Throws IndexOutOfRange unless 0 <= n_tokens <= token count.
int complete_words_in_prefix(const Tokenization& tok, int n_tokens);

// External-map file: UTF-8 text, one sentence per line, space-separated
// positive integers giving the token count of each word (`1 3 2` = three
// words of 1, 3 and 2 tokens).
std::vector<std::vector<int>> load_external_maps(const std::string& path);

// Splits a UTF-8 string into Unicode scalar substrings. Invalid bytes are
// passed through as single-byte scalars.
std::vector<std::string> utf8_scalars(const std::string& text);

}  // namespace simt
