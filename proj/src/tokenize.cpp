#include "simt/tokenize.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace simt {

TokenizerScheme TokenizerScheme::whitespace() {
    return {};
}

TokenizerScheme TokenizerScheme::fixed_chunk(int max_scalars) {
    if (max_scalars < 1) {
        throw ConfigError("fixed-chunk size must be >= 1, got " + std::to_string(max_scalars));
    }
    TokenizerScheme s;
    s.kind = Kind::FixedChunk;
    s.chunk_size = max_scalars;
    return s;
}

TokenizerScheme TokenizerScheme::external_map(std::vector<int> tokens_per_word) {
    TokenizerScheme s;
    s.kind = Kind::ExternalMap;
    s.tokens_per_word = std::move(tokens_per_word);
    return s;
}

std::vector<std::string> split_words(const std::string& text) {
    std::vector<std::string> words;
    std::string current;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            if (!current.empty()) {
                words.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.push_back(static_cast<char>(c));
        }
    }
    if (!current.empty()) {
        words.push_back(std::move(current));
    }
    if (words.empty()) {
        throw EmptySentence("text contains no words");
    }
    return words;
}

std::vector<std::string> utf8_scalars(const std::string& text) {
    std::vector<std::string> scalars;
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char b = static_cast<unsigned char>(text[i]);
        std::size_t len = 1;
        if ((b & 0xE0) == 0xC0) len = 2;
        else if ((b & 0xF0) == 0xE0) len = 3;
        else if ((b & 0xF8) == 0xF0) len = 4;
        if (i + len > text.size()) len = 1;
        scalars.push_back(text.substr(i, len));
        i += len;
    }
    return scalars;
}

namespace {

void append_word_tokens(Tokenization& tok, int word_index, const std::vector<std::string>& pieces) {
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        tok.tokens.push_back(pieces[p]);
        tok.word_of_token.push_back(word_index);
        tok.is_word_final.push_back(p + 1 == pieces.size());
    }
}

// Splits scalars into `count` contiguous near-even pieces.
std::vector<std::string> even_split(const std::vector<std::string>& scalars, int count) {
    std::vector<std::string> pieces;
    pieces.reserve(count);
    const std::size_t n = scalars.size();
    for (int p = 0; p < count; ++p) {
        std::size_t lo = n * p / count;
        std::size_t hi = n * (p + 1) / count;
        std::string piece;
        for (std::size_t s = lo; s < hi; ++s) piece += scalars[s];
        pieces.push_back(std::move(piece));
    }
    return pieces;
}

}  // namespace

Tokenization tokenize(const std::vector<std::string>& words, const TokenizerScheme& scheme) {
    if (words.empty()) {
        throw EmptySentence("cannot tokenize an empty word sequence");
    }
    if (scheme.kind == TokenizerScheme::Kind::ExternalMap &&
        scheme.tokens_per_word.size() != words.size()) {
        throw MapMismatch("external map has " + std::to_string(scheme.tokens_per_word.size()) +
                          " entries for " + std::to_string(words.size()) + " words");
    }

    Tokenization tok;
    for (std::size_t w = 0; w < words.size(); ++w) {
        const int word_index = static_cast<int>(w) + 1;
        switch (scheme.kind) {
            case TokenizerScheme::Kind::Whitespace:
                append_word_tokens(tok, word_index, {words[w]});
                break;
            case TokenizerScheme::Kind::FixedChunk: {
                auto scalars = utf8_scalars(words[w]);
                std::vector<std::string> pieces;
                for (std::size_t s = 0; s < scalars.size(); s += scheme.chunk_size) {
                    std::string piece;
                    for (std::size_t t = s; t < scalars.size() && t < s + scheme.chunk_size; ++t) {
                        piece += scalars[t];
                    }
                    pieces.push_back(std::move(piece));
                }
                append_word_tokens(tok, word_index, pieces);
                break;
            }
            case TokenizerScheme::Kind::ExternalMap: {
                const int count = scheme.tokens_per_word[w];
                auto scalars = utf8_scalars(words[w]);
                if (count < 1 || static_cast<std::size_t>(count) > scalars.size()) {
                    throw MapMismatch("word '" + words[w] + "' has " +
                                      std::to_string(scalars.size()) + " scalars but the map asks for " +
                                      std::to_string(count) + " tokens");
                }
                append_word_tokens(tok, word_index, even_split(scalars, count));
                break;
            }
        }
    }
    return tok;
}

int complete_words_in_prefix(const Tokenization& tok, int n_tokens) {
    if (n_tokens < 0 || n_tokens > tok.token_count()) {
        throw IndexOutOfRange("token prefix " + std::to_string(n_tokens) + " outside [0, " +
                              std::to_string(tok.token_count()) + "]");
    }
    int complete = 0;
    for (int t = 0; t < n_tokens; ++t) {
        if (tok.is_word_final[t]) ++complete;
    }
    return complete;
}

std::vector<std::vector<int>> load_external_maps(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open external map file: " + path);
    }
    std::vector<std::vector<int>> maps;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream row(line);
        std::vector<int> counts;
        std::string field;
        while (row >> field) {
            int value = 0;
            try {
                std::size_t used = 0;
                value = std::stoi(field, &used);
                if (used != field.size()) throw std::invalid_argument(field);
            } catch (const std::exception&) {
                throw FileFormatError(path + ":" + std::to_string(line_no) +
                                      ": expected an integer, got '" + field + "'");
            }
            if (value < 1) {
                throw FileFormatError(path + ":" + std::to_string(line_no) +
                                      ": token counts must be >= 1, got " + std::to_string(value));
            }
            counts.push_back(value);
        }
        maps.push_back(std::move(counts));
    }
    return maps;
}

}  // namespace simt
