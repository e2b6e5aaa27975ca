#include "simt/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <json.hpp>

#include "simt/tokenize.hpp"

#ifndef SIMT_VERSION
#define SIMT_VERSION "0.0.0"
#endif
#ifndef SIMT_GIT_REV
#define SIMT_GIT_REV "unknown"
#endif

namespace simt {

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open file: " + path);
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

namespace {

std::vector<std::string> words_of_line(const std::string& path, std::size_t line_no,
                                       const std::string& line) {
    try {
        return split_words(line);
    } catch (const EmptySentence&) {
        throw FileFormatError(path + ":" + std::to_string(line_no) + ": empty sentence");
    }
}

}  // namespace

std::vector<SentencePair> load_parallel_corpus(const std::string& source_path,
                                               const std::string& target_path) {
    auto source_lines = read_lines(source_path);
    auto target_lines = read_lines(target_path);
    if (source_lines.size() != target_lines.size()) {
        throw LengthMismatch(source_path + " has " + std::to_string(source_lines.size()) +
                             " lines but " + target_path + " has " +
                             std::to_string(target_lines.size()));
    }
    std::vector<SentencePair> pairs;
    pairs.reserve(source_lines.size());
    for (std::size_t i = 0; i < source_lines.size(); ++i) {
        SentencePair pair;
        pair.id = std::to_string(i + 1);
        pair.source_words = words_of_line(source_path, i + 1, source_lines[i]);
        pair.target_words = words_of_line(target_path, i + 1, target_lines[i]);
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

std::vector<SentencePair> load_corpus_jsonl(const std::string& path) {
    auto lines = read_lines(path);
    std::vector<SentencePair> pairs;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto record = nlohmann::json::parse(lines[i], nullptr, false);
        if (record.is_discarded() || !record.is_object() || !record.contains("id") ||
            !record.contains("src") || !record.contains("tgt")) {
            throw FileFormatError(path + ":" + std::to_string(i + 1) +
                                  ": expected {\"id\",\"src\",\"tgt\"}");
        }
        SentencePair pair;
        pair.id = record["id"].is_string() ? record["id"].get<std::string>()
                                           : record["id"].dump();
        pair.source_words = words_of_line(path, i + 1, record["src"].get<std::string>());
        pair.target_words = words_of_line(path, i + 1, record["tgt"].get<std::string>());
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

bool id_less(const std::string& a, const std::string& b) {
    auto all_digits = [](const std::string& s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
            return std::isdigit(c);
        });
    };
    if (all_digits(a) && all_digits(b)) {
        if (a.size() != b.size()) return a.size() < b.size();
    }
    return a < b;
}

std::string version_string() {
    return std::string("simt ") + SIMT_VERSION + " (" + SIMT_GIT_REV + ")";
}

}  // namespace simt
