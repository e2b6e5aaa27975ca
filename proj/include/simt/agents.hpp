#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "simt/core.hpp"

namespace simt {

// READ pulls the next source word into memory, WRITE asks the translation
// agent for the next target word.
enum class Decision { Read, Write };

// The shared session store: instruction text, source words read so far and
// target words emitted so far. Word lists only ever grow.
class Memory {
public:
    Memory() = default;
    explicit Memory(std::string instruction) : instruction_(std::move(instruction)) {}

    const std::string& instruction() const { return instruction_; }
    const std::vector<std::string>& source_words() const { return source_words_; }
    const std::vector<std::string>& target_words() const { return target_words_; }
    int words_read() const { return static_cast<int>(source_words_.size()); }
    int words_written() const { return static_cast<int>(target_words_.size()); }

    void push_source_word(std::string word) { source_words_.push_back(std::move(word)); }
    void push_target_word(std::string word) { target_words_.push_back(std::move(word)); }

private:
    std::string instruction_;
    std::vector<std::string> source_words_;
    std::vector<std::string> target_words_;
};

// Prompt template with the placeholders {instruction}, {source} and
// {target_prefix}, each required exactly once.
class PromptTemplate {
public:
    // Throws TemplateError when a placeholder is missing or repeated.
    static PromptTemplate parse(std::string text);
    static PromptTemplate from_file(const std::string& path);

    const std::string& text() const { return text_; }

private:
    explicit PromptTemplate(std::string text) : text_(std::move(text)) {}
    std::string text_;
};

// Substitutes the placeholders; source words and the target prefix are
// joined with single spaces.
std::string render_prompt(const PromptTemplate& tmpl, const Memory& memory);

// ---------------------------------------------------------------------------
// Policy-decision agents

class PolicyDecisionAgent {
public:
    virtual ~PolicyDecisionAgent() = default;

    // Must return Write when source_exhausted is true; decisions are a pure
    // function of the memory contents.
    virtual Decision decide(const Memory& memory, bool source_exhausted) = 0;
};

// Write once the number of unconsumed read words reaches k.
class WaitKWordAgent final : public PolicyDecisionAgent {
public:
    explicit WaitKWordAgent(int k);
    Decision decide(const Memory& memory, bool source_exhausted) override;

private:
    int k_;
};

// Write the i-th target word once the scheduled read count for position i is
// met. Positions past the end of the schedule reuse its final entry.
class ScheduledPolicyAgent final : public PolicyDecisionAgent {
public:
    explicit ScheduledPolicyAgent(WordPolicy schedule);
    Decision decide(const Memory& memory, bool source_exhausted) override;

private:
    WordPolicy schedule_;
};

// ---------------------------------------------------------------------------
// Translation agents

struct AgentRetryInfo {
    bool retryable = false;
    int http_status = 0;  // 0 for transport-level failures
    int attempts = 0;
};

class AgentUnavailable : public Error {
public:
    AgentUnavailable(const std::string& message, AgentRetryInfo info)
        : Error(message), info_(info) {}

    const AgentRetryInfo& retry() const { return info_; }

private:
    AgentRetryInfo info_;
};

class TranslationAgent {
public:
    virtual ~TranslationAgent() = default;

    // One target word without whitespace, or nullopt for end of sequence.
    virtual std::optional<std::string> next_word(const Memory& memory) = 0;
};

// Emits a scripted reference translation in order, then EOS.
class OracleAgent final : public TranslationAgent {
public:
    explicit OracleAgent(std::vector<std::string> reference)
        : reference_(std::move(reference)) {}
    std::optional<std::string> next_word(const Memory& memory) override;

private:
    std::vector<std::string> reference_;
    std::size_t next_ = 0;
};

// Emits the earliest source word it has not yet echoed, EOS once every read
// word was consumed. Latency-path test double.
class EchoAgent final : public TranslationAgent {
public:
    std::optional<std::string> next_word(const Memory& memory) override;

private:
    std::size_t consumed_ = 0;
};

struct RemoteAgentOptions {
    std::string endpoint;          // http://host[:port]/path
    int max_new_tokens = 16;
    double timeout_seconds = 30.0;
    std::string eos_sentinel = "</s>";
    int max_attempts = 1;          // transport retries before giving up
};

// Translation over HTTP: POST {"prompt","max_new_tokens","greedy":true,
// "stop":[" "]} and read {"text"}. The first whitespace-separated item of
// the trimmed response is the next word; an empty response or one starting
// with the EOS sentinel is end of sequence. Transport, timeout and protocol
// failures raise AgentUnavailable with retry metadata.
class RemoteAgent final : public TranslationAgent {
public:
    RemoteAgent(RemoteAgentOptions options, PromptTemplate tmpl);
    ~RemoteAgent() override;

    std::optional<std::string> next_word(const Memory& memory) override;

private:
    RemoteAgentOptions options_;
    PromptTemplate template_;
    struct Client;
    std::unique_ptr<Client> client_;
};

}  // namespace simt
