#include "simt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "simt/io.hpp"
#include "simt/tokenize.hpp"

namespace simt {

double average_lagging(const WordPolicy& policy, int source_word_count, int target_word_count) {
    if (target_word_count == 0) {
        throw UndefinedMetric("average lagging is undefined for an empty translation");
    }
    if (policy.length() != target_word_count) {
        throw LengthMismatch("policy has " + std::to_string(policy.length()) + " entries for " +
                             std::to_string(target_word_count) + " target words");
    }
    validate(policy, source_word_count);

    int cutoff = target_word_count;
    for (int i = 0; i < target_word_count; ++i) {
        if (policy.read_counts[i] == source_word_count) {
            cutoff = i + 1;
            break;
        }
    }
    const double rate = static_cast<double>(target_word_count) / source_word_count;
    double sum = 0.0;
    for (int i = 1; i <= cutoff; ++i) {
        sum += policy.read_counts[i - 1] - (i - 1) / rate;
    }
    return sum / cutoff;
}

// ---------------------------------------------------------------------------
// BLEU

namespace {

constexpr int kMaxOrder = 4;

// n-grams are keyed by their words joined with an unlikely separator byte.
void count_ngrams(const std::vector<std::string>& words, int order,
                  std::unordered_map<std::string, long long>& counts) {
    if (static_cast<int>(words.size()) < order) return;
    for (std::size_t i = 0; i + order <= words.size(); ++i) {
        std::string key;
        for (int j = 0; j < order; ++j) {
            if (j) key += '\x1f';
            key += words[i + j];
        }
        ++counts[key];
    }
}

struct NgramTally {
    long long matches = 0;
    long long total = 0;
};

NgramTally tally_order(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                       int order) {
    NgramTally tally;
    std::unordered_map<std::string, long long> hyp_counts, ref_counts;
    count_ngrams(hyp, order, hyp_counts);
    count_ngrams(ref, order, ref_counts);
    for (const auto& [ngram, count] : hyp_counts) {
        tally.total += count;
        auto it = ref_counts.find(ngram);
        if (it != ref_counts.end()) {
            tally.matches += std::min(count, it->second);
        }
    }
    return tally;
}

double brevity_penalty(long long hyp_len, long long ref_len) {
    if (hyp_len >= ref_len) return 1.0;
    return std::exp(1.0 - static_cast<double>(ref_len) / hyp_len);
}

}  // namespace

BleuScore corpus_bleu(const std::vector<std::vector<std::string>>& hypotheses,
                      const std::vector<std::vector<std::string>>& references) {
    if (hypotheses.size() != references.size()) {
        throw LengthMismatch("corpus BLEU needs equal hypothesis and reference counts, got " +
                             std::to_string(hypotheses.size()) + " vs " +
                             std::to_string(references.size()));
    }
    if (references.empty()) {
        throw LengthMismatch("corpus BLEU needs at least one sentence pair");
    }

    BleuScore result;
    std::array<NgramTally, kMaxOrder> orders{};
    for (std::size_t s = 0; s < hypotheses.size(); ++s) {
        result.hypothesis_length += static_cast<long long>(hypotheses[s].size());
        result.reference_length += static_cast<long long>(references[s].size());
        for (int n = 1; n <= kMaxOrder; ++n) {
            auto tally = tally_order(hypotheses[s], references[s], n);
            orders[n - 1].matches += tally.matches;
            orders[n - 1].total += tally.total;
        }
    }

    if (result.hypothesis_length == 0) {
        result.zero_precision = true;
        return result;
    }

    double log_sum = 0.0;
    for (int n = 0; n < kMaxOrder; ++n) {
        const auto& tally = orders[n];
        double p = tally.total == 0 ? 0.0 : static_cast<double>(tally.matches) / tally.total;
        result.precisions[n] = p;
        if (p == 0.0) {
            result.zero_precision = true;
        } else {
            log_sum += std::log(p) / kMaxOrder;
        }
    }
    result.brevity_penalty = brevity_penalty(result.hypothesis_length, result.reference_length);
    result.score =
        result.zero_precision ? 0.0 : result.brevity_penalty * std::exp(log_sum) * 100.0;
    return result;
}

BleuScore corpus_bleu_lines(const std::vector<std::string>& hypothesis_lines,
                            const std::vector<std::string>& reference_lines) {
    auto split_all = [](const std::vector<std::string>& lines) {
        std::vector<std::vector<std::string>> out;
        out.reserve(lines.size());
        for (const auto& line : lines) {
            try {
                out.push_back(split_words(line));
            } catch (const EmptySentence&) {
                out.emplace_back();
            }
        }
        return out;
    };
    return corpus_bleu(split_all(hypothesis_lines), split_all(reference_lines));
}

double sentence_bleu_smoothed(const std::vector<std::string>& hypothesis,
                              const std::vector<std::string>& reference) {
    if (hypothesis.empty()) return 0.0;
    double log_sum = 0.0;
    for (int n = 1; n <= kMaxOrder; ++n) {
        auto tally = tally_order(hypothesis, reference, n);
        double p;
        if (n == 1) {
            p = tally.total == 0 ? 0.0 : static_cast<double>(tally.matches) / tally.total;
        } else {
            p = static_cast<double>(tally.matches + 1) / (tally.total + 1);
        }
        if (p == 0.0) return 0.0;
        log_sum += std::log(p) / kMaxOrder;
    }
    return brevity_penalty(static_cast<long long>(hypothesis.size()),
                           static_cast<long long>(reference.size())) *
           std::exp(log_sum) * 100.0;
}

// ---------------------------------------------------------------------------
// Hallucination

namespace {

int unaligned_targets(int target_word_count, const AlignmentSet& alignment) {
    std::unordered_set<int> aligned;
    for (const auto& e : alignment.edges) {
        if (e.target < 1 || e.target > target_word_count) {
            throw IndexOutOfRange("alignment target index " + std::to_string(e.target) +
                                  " outside [1, " + std::to_string(target_word_count) + "]");
        }
        aligned.insert(e.target);
    }
    return target_word_count - static_cast<int>(aligned.size());
}

}  // namespace

double hallucination_rate(int target_word_count, const AlignmentSet& alignment) {
    if (target_word_count == 0) {
        throw UndefinedMetric("hallucination rate is undefined for an empty translation");
    }
    return static_cast<double>(unaligned_targets(target_word_count, alignment)) /
           target_word_count;
}

double hallucination_rate(const std::vector<std::string>& target_words,
                          const AlignmentSet& alignment) {
    return hallucination_rate(static_cast<int>(target_words.size()), alignment);
}

HallucinationStats corpus_hallucination(const std::vector<int>& target_word_counts,
                                        const std::vector<AlignmentSet>& alignments) {
    if (target_word_counts.size() != alignments.size()) {
        throw LengthMismatch("hallucination needs one alignment set per sentence");
    }
    HallucinationStats stats;
    for (std::size_t s = 0; s < alignments.size(); ++s) {
        const int count = target_word_counts[s];
        if (count == 0) continue;
        stats.unaligned += unaligned_targets(count, alignments[s]);
        stats.total += count;
    }
    return stats;
}

// ---------------------------------------------------------------------------
// Non-monotonic alignments

CrossingStats count_nonmonotonic(const AlignmentSet& alignment) {
    std::vector<AlignmentEdge> edges = alignment.edges;
    std::sort(edges.begin(), edges.end());

    CrossingStats stats;
    std::vector<int> earlier_targets;  // sorted targets of edges with smaller src
    std::size_t i = 0;
    while (i < edges.size()) {
        std::size_t j = i;
        while (j < edges.size() && edges[j].source == edges[i].source) ++j;
        // edges[i..j) share one source index; they never cross each other
        for (std::size_t e = i; e < j; ++e) {
            const int tgt = edges[e].target;
            auto above = std::upper_bound(earlier_targets.begin(), earlier_targets.end(), tgt);
            stats.crossings += earlier_targets.end() - above;
            if (!earlier_targets.empty() && earlier_targets.back() > tgt) {
                stats.max_distance = std::max(stats.max_distance, earlier_targets.back() - tgt);
            }
        }
        for (std::size_t e = i; e < j; ++e) {
            earlier_targets.insert(
                std::upper_bound(earlier_targets.begin(), earlier_targets.end(), edges[e].target),
                edges[e].target);
        }
        i = j;
    }
    return stats;
}

// ---------------------------------------------------------------------------
// Difficulty split

DifficultySplit difficulty_split(const std::vector<SentenceDifficulty>& sentences) {
    if (sentences.size() < 3) {
        throw TooFewSentences("difficulty split needs at least 3 sentences, got " +
                              std::to_string(sentences.size()));
    }
    std::vector<SentenceDifficulty> ordered = sentences;
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.stats.crossings != b.stats.crossings) return a.stats.crossings < b.stats.crossings;
        if (a.stats.max_distance != b.stats.max_distance) {
            return a.stats.max_distance < b.stats.max_distance;
        }
        return id_less(a.id, b.id);
    });

    const std::size_t n = ordered.size();
    std::array<std::size_t, 3> sizes{n / 3, n / 3, n / 3};
    for (std::size_t g = 0; g < n % 3; ++g) ++sizes[g];

    DifficultySplit split;
    std::vector<std::string>* groups[3] = {&split.easy, &split.medium, &split.hard};
    std::size_t pos = 0;
    for (int g = 0; g < 3; ++g) {
        for (std::size_t k = 0; k < sizes[g]; ++k) groups[g]->push_back(ordered[pos++].id);
    }
    return split;
}

DifficultySplit difficulty_split(
    const std::vector<std::pair<std::string, AlignmentSet>>& alignments) {
    std::vector<SentenceDifficulty> sentences;
    sentences.reserve(alignments.size());
    for (const auto& [id, alignment] : alignments) {
        sentences.push_back({id, count_nonmonotonic(alignment)});
    }
    return difficulty_split(sentences);
}

// ---------------------------------------------------------------------------
// Pharaoh alignments

std::vector<AlignmentSet> load_pharaoh_alignments(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open alignment file: " + path);
    }
    std::vector<AlignmentSet> alignments;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        AlignmentSet alignment;
        std::unordered_set<long long> seen;
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && line[pos] == ' ') ++pos;
            if (pos >= line.size()) break;
            std::size_t end = line.find(' ', pos);
            if (end == std::string::npos) end = line.size();
            std::string pair = line.substr(pos, end - pos);
            pos = end;
            auto dash = pair.find('-');
            int src = -1, tgt = -1;
            try {
                if (dash == std::string::npos) throw std::invalid_argument(pair);
                std::size_t used_a = 0, used_b = 0;
                src = std::stoi(pair.substr(0, dash), &used_a);
                tgt = std::stoi(pair.substr(dash + 1), &used_b);
                if (used_a != dash || used_b != pair.size() - dash - 1) {
                    throw std::invalid_argument(pair);
                }
            } catch (const std::exception&) {
                throw FileFormatError(path + ":" + std::to_string(line_no) +
                                      ": expected `src-tgt` pair, got '" + pair + "'");
            }
            if (src < 0 || tgt < 0) {
                throw FileFormatError(path + ":" + std::to_string(line_no) +
                                      ": negative index in '" + pair + "'");
            }
            // disk is 0-based, memory is 1-based
            long long key = static_cast<long long>(src) << 32 | static_cast<unsigned>(tgt);
            if (seen.insert(key).second) {
                alignment.edges.push_back({src + 1, tgt + 1});
            }
        }
        alignments.push_back(std::move(alignment));
    }
    return alignments;
}

// ---------------------------------------------------------------------------
// Report JSON

namespace {

using nlohmann::json;

json bleu_json(const BleuScore& b) {
    return json{{"score", b.score},
                {"zero_precision", b.zero_precision},
                {"precisions", b.precisions},
                {"brevity_penalty", b.brevity_penalty},
                {"hypothesis_length", b.hypothesis_length},
                {"reference_length", b.reference_length}};
}

}  // namespace

json eval_report_json(const EvalReport& report) {
    json j = json::object();
    if (report.average_lagging) j["al"] = *report.average_lagging;
    if (report.bleu) j["bleu"] = bleu_json(*report.bleu);
    if (report.hallucination_rate) j["hr"] = *report.hallucination_rate;
    if (report.speed_words_per_second) {
        j["speed_words_per_second"] = std::isfinite(*report.speed_words_per_second)
                                          ? json(*report.speed_words_per_second)
                                          : json("inf");
        j["speed_reliable"] = report.speed_reliable;
    }
    json sentences = json::array();
    for (const auto& s : report.per_sentence) {
        json row{{"id", s.id}};
        if (s.average_lagging) row["al"] = *s.average_lagging;
        if (s.bleu_smoothed) row["bleu_smoothed"] = *s.bleu_smoothed;
        if (s.hallucination_rate) row["hr"] = *s.hallucination_rate;
        if (s.crossings) {
            row["crossings"] = s.crossings->crossings;
            row["max_crossing_distance"] = s.crossings->max_distance;
        }
        sentences.push_back(std::move(row));
    }
    j["per_sentence"] = std::move(sentences);
    if (report.difficulty) {
        const char* names[3] = {"easy", "medium", "hard"};
        json levels = json::object();
        for (int g = 0; g < 3; ++g) {
            const auto& level = (*report.difficulty)[g];
            levels[names[g]] = json{{"ids", level.ids}, {"bleu", bleu_json(level.bleu)}};
        }
        j["difficulty"] = std::move(levels);
    }
    return j;
}

}  // namespace simt
