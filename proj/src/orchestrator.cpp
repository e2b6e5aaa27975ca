#include "simt/orchestrator.hpp"

#include <chrono>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace simt {

std::vector<std::string> Transcript::target_words() const {
    std::vector<std::string> words;
    for (const auto& e : events) {
        if (e.kind == TranscriptEvent::Kind::Write) words.push_back(e.word);
    }
    return words;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_between(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

}  // namespace

Transcript run_session(const std::string& id, WordStream& source, PolicyDecisionAgent& policy_agent,
                       TranslationAgent& translation_agent, const SessionLimits& limits) {
    if (limits.boundary) validate(*limits.boundary);

    Transcript transcript;
    transcript.id = id;
    Memory memory;

    const auto start = Clock::now();
    double stream_wait = 0.0;
    auto now_offset = [&] { return seconds_between(start, Clock::now()) - stream_wait; };

    auto pull = [&]() -> std::optional<std::string> {
        auto before = Clock::now();
        auto word = source.next();
        stream_wait += seconds_between(before, Clock::now());
        return word;
    };

    std::optional<std::string> lookahead = pull();

    while (true) {
        const bool exhausted = !lookahead.has_value();
        const long long next_index = memory.words_written() + 1;

        Decision decision = policy_agent.decide(memory, exhausted);
        if (exhausted) {
            decision = Decision::Write;  // nothing left to read
        } else if (limits.boundary) {
            const long long lo = next_index - 1 + limits.boundary->min_initial_reads;
            const long long hi = next_index - 1 + limits.boundary->max_initial_reads;
            if (decision == Decision::Write && memory.words_read() < lo) {
                decision = Decision::Read;
            } else if (decision == Decision::Read && memory.words_read() >= hi) {
                decision = Decision::Write;
            }
        }

        if (decision == Decision::Read) {
            memory.push_source_word(*lookahead);
            transcript.events.push_back(
                {TranscriptEvent::Kind::Read, memory.source_words().back(), now_offset()});
            lookahead = pull();
            continue;
        }

        std::optional<std::string> word;
        try {
            word = translation_agent.next_word(memory);
        } catch (const AgentUnavailable& e) {
            transcript.realized_policy = replay_policy(transcript);
            transcript.wall_seconds = now_offset();
            throw SessionAborted(e.what(), std::move(transcript), e.retry());
        }

        if (!word.has_value() || *word == limits.eos_word) {
            transcript.events.push_back({TranscriptEvent::Kind::Eos, "", now_offset()});
            break;
        }

        memory.push_target_word(*word);
        transcript.events.push_back(
            {TranscriptEvent::Kind::Write, memory.target_words().back(), now_offset()});
        transcript.realized_policy.read_counts.push_back(memory.words_read());

        long long cap = limits.max_target_words;
        if (cap <= 0) {
            // default guard 2*J + 10; J is known only once the stream ended
            cap = exhausted ? 2LL * memory.words_read() + 10
                            : std::numeric_limits<long long>::max();
        }
        if (memory.words_written() >= cap) {
            transcript.truncated = true;
            break;
        }
    }

    transcript.wall_seconds = now_offset();
    return transcript;
}

Transcript run_session(const std::string& id, const std::vector<std::string>& source_words,
                       PolicyDecisionAgent& policy_agent, TranslationAgent& translation_agent,
                       const SessionLimits& limits) {
    SessionLimits resolved = limits;
    if (resolved.max_target_words <= 0) {
        resolved.max_target_words = 2 * static_cast<int>(source_words.size()) + 10;
    }
    VectorWordStream stream(source_words);
    return run_session(id, stream, policy_agent, translation_agent, resolved);
}

WordPolicy replay_policy(const Transcript& transcript) {
    WordPolicy policy;
    int reads = 0;
    for (const auto& e : transcript.events) {
        switch (e.kind) {
            case TranscriptEvent::Kind::Read: ++reads; break;
            case TranscriptEvent::Kind::Write: policy.read_counts.push_back(reads); break;
            case TranscriptEvent::Kind::Eos: break;
        }
    }
    return policy;
}

SpeedEstimate measure_speed(std::span<const Transcript> transcripts) {
    long long words = 0;
    double seconds = 0.0;
    for (const auto& t : transcripts) {
        for (const auto& e : t.events) {
            if (e.kind == TranscriptEvent::Kind::Write) ++words;
        }
        seconds += t.wall_seconds;
    }
    if (words == 0) {
        throw UndefinedMetric("speed is undefined without generated words");
    }
    if (seconds <= 0.0) {
        return {std::numeric_limits<double>::infinity(), false};
    }
    return {static_cast<double>(words) / seconds, true};
}

namespace {

using nlohmann::json;

json transcript_to_json(const Transcript& t) {
    json events = json::array();
    for (const auto& e : t.events) {
        switch (e.kind) {
            case TranscriptEvent::Kind::Read:
                events.push_back(json::array({"R", e.word}));
                break;
            case TranscriptEvent::Kind::Write:
                events.push_back(json::array({"W", e.word}));
                break;
            case TranscriptEvent::Kind::Eos:
                events.push_back(json::array({"EOS"}));
                break;
        }
    }
    return json{{"id", t.id},
                {"events", std::move(events)},
                {"g", t.realized_policy.read_counts},
                {"seconds", t.wall_seconds},
                {"truncated", t.truncated}};
}

}  // namespace

void save_transcripts(const std::string& path, std::span<const Transcript> transcripts) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write transcript file: " + path);
    }
    for (const auto& t : transcripts) {
        out << transcript_to_json(t).dump() << '\n';
    }
}

std::vector<Transcript> load_transcripts(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open transcript file: " + path);
    }
    std::vector<Transcript> transcripts;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object() || !record.contains("id") ||
            !record.contains("events")) {
            throw FileFormatError(path + ":" + std::to_string(line_no) + ": malformed transcript");
        }
        Transcript t;
        t.id = record["id"].get<std::string>();
        for (const auto& e : record["events"]) {
            if (!e.is_array() || e.empty()) {
                throw FileFormatError(path + ":" + std::to_string(line_no) + ": malformed event");
            }
            std::string tag = e[0].get<std::string>();
            if (tag == "R" && e.size() == 2) {
                t.events.push_back({TranscriptEvent::Kind::Read, e[1].get<std::string>(), 0.0});
            } else if (tag == "W" && e.size() == 2) {
                t.events.push_back({TranscriptEvent::Kind::Write, e[1].get<std::string>(), 0.0});
            } else if (tag == "EOS") {
                t.events.push_back({TranscriptEvent::Kind::Eos, "", 0.0});
            } else {
                throw FileFormatError(path + ":" + std::to_string(line_no) + ": unknown event tag '" +
                                      tag + "'");
            }
        }
        if (record.contains("g")) {
            for (const auto& v : record["g"]) t.realized_policy.read_counts.push_back(v.get<int>());
        } else {
            t.realized_policy = replay_policy(t);
        }
        t.wall_seconds = record.value("seconds", 0.0);
        t.truncated = record.value("truncated", false);
        transcripts.push_back(std::move(t));
    }
    return transcripts;
}

}  // namespace simt
