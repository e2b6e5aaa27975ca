#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "simt/core.hpp"

namespace simt {

// ---------------------------------------------------------------------------
// Latency
//
// Average lagging over words. Policies in this toolkit are word-level, so AL
// is computed over words, never tokens; mixing the two granularities makes
// results incomparable across systems.
//
// With cutoff tau = first position whose read count reaches the source
// length (tau = target length if none) and rate r = target/source length:
//   AL = (1/tau) * sum_{i<=tau} (reads_i - (i-1)/r)
//
// Throws UndefinedMetric when target_word_count is 0 and LengthMismatch when
// the policy length differs from target_word_count.
double average_lagging(const WordPolicy& policy, int source_word_count, int target_word_count);

// ---------------------------------------------------------------------------
// Quality

struct BleuScore {
    double score = 0.0;  // 0..100
    // Some n-gram order had zero matches; the score is 0 with no smoothing.
    bool zero_precision = false;
    std::array<double, 4> precisions{};
    double brevity_penalty = 0.0;
    long long hypothesis_length = 0;
    long long reference_length = 0;
};

// Corpus 4-gram BLEU over corpus-pooled clipped counts with brevity penalty
// min(1, exp(1 - ref_len/hyp_len)). Words are whitespace tokens. Single
// reference per hypothesis. Throws LengthMismatch on unequal counts.
BleuScore corpus_bleu(const std::vector<std::vector<std::string>>& hypotheses,
                      const std::vector<std::vector<std::string>>& references);

// Convenience over raw sentence lines; each line is whitespace-split.
BleuScore corpus_bleu_lines(const std::vector<std::string>& hypothesis_lines,
                            const std::vector<std::string>& reference_lines);

// Per-sentence BLEU with add-one smoothing on orders >= 2; used for
// per-sentence breakdowns only, never for the corpus score.
double sentence_bleu_smoothed(const std::vector<std::string>& hypothesis,
                              const std::vector<std::string>& reference);

// ---------------------------------------------------------------------------
// Hallucination
//
// A target word with no incident alignment edge counts as hallucinated.
// This is the timing-agnostic definition: whether the aligned source word
// had been read when the word was emitted is not considered.

double hallucination_rate(const std::vector<std::string>& target_words,
                          const AlignmentSet& alignment);
double hallucination_rate(int target_word_count, const AlignmentSet& alignment);

struct HallucinationStats {
    long long unaligned = 0;
    long long total = 0;

    double rate() const { return total == 0 ? 0.0 : static_cast<double>(unaligned) / total; }
};

HallucinationStats corpus_hallucination(const std::vector<int>& target_word_counts,
                                        const std::vector<AlignmentSet>& alignments);

// ---------------------------------------------------------------------------
// Reordering difficulty

struct CrossingStats {
    long long crossings = 0;  // pairs a,b with a.src < b.src and a.tgt > b.tgt
    int max_distance = 0;     // largest a.tgt - b.tgt over crossing pairs

    friend bool operator==(const CrossingStats&, const CrossingStats&) = default;
};

CrossingStats count_nonmonotonic(const AlignmentSet& alignment);

struct SentenceDifficulty {
    std::string id;
    CrossingStats stats;
};

struct DifficultySplit {
    std::vector<std::string> easy, medium, hard;
};

// Sorts sentences by (crossings, max_distance, id) ascending and cuts the
// order into three contiguous groups whose sizes differ by at most one (the
// earlier groups take the remainder). Throws TooFewSentences below 3.
DifficultySplit difficulty_split(const std::vector<SentenceDifficulty>& sentences);
DifficultySplit difficulty_split(const std::vector<std::pair<std::string, AlignmentSet>>& alignments);

// ---------------------------------------------------------------------------
// Alignment file parsing
//
// Pharaoh text format: one sentence per line, space-separated `src-tgt`
// pairs, 0-based on disk; indices are converted to 1-based here and
// duplicate pairs are dropped.
std::vector<AlignmentSet> load_pharaoh_alignments(const std::string& path);

// ---------------------------------------------------------------------------
// Aggregate report

struct SentenceEval {
    std::string id;
    std::optional<double> average_lagging;
    std::optional<double> bleu_smoothed;
    std::optional<double> hallucination_rate;
    std::optional<CrossingStats> crossings;
};

struct DifficultyBleu {
    std::vector<std::string> ids;
    BleuScore bleu;
};

struct EvalReport {
    // Corpus AL is the mean of per-sentence AL; corpus HR pools unaligned
    // counts over pooled target words; speed pools words over seconds.
    std::optional<double> average_lagging;
    std::optional<BleuScore> bleu;
    std::optional<double> hallucination_rate;
    std::optional<double> speed_words_per_second;
    bool speed_reliable = true;
    std::vector<SentenceEval> per_sentence;
    std::optional<std::array<DifficultyBleu, 3>> difficulty;  // easy, medium, hard
};

nlohmann::json eval_report_json(const EvalReport& report);

}  // namespace simt
