#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simt/agents.hpp"
#include "simt/core.hpp"

namespace simt {

// Limits applied to one streaming session.
struct SessionLimits {
    // Live clamp on decisions; unset means decisions pass through unchanged
    // (source exhaustion still forces writes).
    std::optional<BoundaryConfig> boundary;
    // Hard cap on generated words; <= 0 selects 2*J + 10 once the source
    // length J is known.
    int max_target_words = 0;
    // A generated word equal to this sentinel terminates the session.
    std::string eos_word = "</s>";
};

struct TranscriptEvent {
    enum class Kind { Read, Write, Eos };

    Kind kind = Kind::Read;
    std::string word;         // empty for Eos
    double at_seconds = 0.0;  // monotonic offset from session start
};

// Record of one session: the event sequence, the realized word-level read
// schedule (reads preceding each write) and the generation wall time.
struct Transcript {
    std::string id;
    std::vector<TranscriptEvent> events;
    WordPolicy realized_policy;
    double wall_seconds = 0.0;
    bool truncated = false;

    std::vector<std::string> target_words() const;
};

// Raised when the translation agent becomes unavailable mid-session; carries
// everything recorded up to the failure.
class SessionAborted : public Error {
public:
    SessionAborted(const std::string& message, Transcript partial, AgentRetryInfo retry)
        : Error(message), partial_(std::move(partial)), retry_(retry) {}

    const Transcript& partial() const { return partial_; }
    const AgentRetryInfo& retry() const { return retry_; }

private:
    Transcript partial_;
    AgentRetryInfo retry_;
};

// Incremental source input. next() yields words in order and nullopt at end
// of stream.
class WordStream {
public:
    virtual ~WordStream() = default;
    virtual std::optional<std::string> next() = 0;
};

class VectorWordStream final : public WordStream {
public:
    explicit VectorWordStream(std::vector<std::string> words) : words_(std::move(words)) {}
    std::optional<std::string> next() override {
        if (pos_ >= words_.size()) return std::nullopt;
        return words_[pos_++];
    }

private:
    std::vector<std::string> words_;
    std::size_t pos_ = 0;
};

// Runs one session: alternate policy decisions with reads and writes until
// the translation agent signals end of sequence or the word cap is reached.
//
// Decisions are filtered so the realized schedule obeys the boundary
// restrictions: a write of word i is deferred to a read while fewer than
// i-1+min_initial_reads words were read (and the stream still has words); a
// read is converted to a write once i-1+max_initial_reads words were read.
// After the stream ends every decision is a write.
//
// Wall time is measured on a monotonic clock and excludes time spent waiting
// on the source stream. With the stream overload, a default word cap is
// resolved only once the stream is exhausted.
Transcript run_session(const std::string& id, WordStream& source, PolicyDecisionAgent& policy_agent,
                       TranslationAgent& translation_agent, const SessionLimits& limits);

// Vector convenience overload; resolves the default word cap upfront from
// the known source length.
Transcript run_session(const std::string& id, const std::vector<std::string>& source_words,
                       PolicyDecisionAgent& policy_agent, TranslationAgent& translation_agent,
                       const SessionLimits& limits);

// Reads per write, recovered from the event sequence. Empty when the session
// wrote nothing.
WordPolicy replay_policy(const Transcript& transcript);

struct SpeedEstimate {
    double words_per_second = 0.0;
    bool reliable = true;  // false when the pooled duration was zero
};

// Pooled generation rate: total writes / total wall seconds.
// Throws UndefinedMetric when no transcript wrote a word.
SpeedEstimate measure_speed(std::span<const Transcript> transcripts);

// Transcript files: JSON Lines, one object per sentence:
// {"id","events":[["R",word]|["W",word]|["EOS"]],"g":[int],"seconds":float,"truncated":bool}.
// Event timestamps are not stored; loaded transcripts carry zero offsets.
void save_transcripts(const std::string& path, std::span<const Transcript> transcripts);
std::vector<Transcript> load_transcripts(const std::string& path);

}  // namespace simt
