#include "simt/agents.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

namespace simt {

namespace {

int count_occurrences(const std::string& text, const std::string& needle) {
    int count = 0;
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

std::string replace_once(std::string text, const std::string& needle, const std::string& value) {
    auto pos = text.find(needle);
    text.replace(pos, needle.size(), value);
    return text;
}

std::string join_words(const std::vector<std::string>& words) {
    std::string joined;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) joined += ' ';
        joined += words[i];
    }
    return joined;
}

}  // namespace

PromptTemplate PromptTemplate::parse(std::string text) {
    for (const char* placeholder : {"{instruction}", "{source}", "{target_prefix}"}) {
        int n = count_occurrences(text, placeholder);
        if (n != 1) {
            throw TemplateError(std::string("template must contain ") + placeholder +
                                " exactly once, found " + std::to_string(n));
        }
    }
    return PromptTemplate(std::move(text));
}

PromptTemplate PromptTemplate::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open template file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    // a trailing newline from the editor is not part of the template
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return parse(std::move(text));
}

std::string render_prompt(const PromptTemplate& tmpl, const Memory& memory) {
    std::string prompt = tmpl.text();
    prompt = replace_once(std::move(prompt), "{instruction}", memory.instruction());
    prompt = replace_once(std::move(prompt), "{source}", join_words(memory.source_words()));
    prompt = replace_once(std::move(prompt), "{target_prefix}", join_words(memory.target_words()));
    return prompt;
}

// ---------------------------------------------------------------------------
// Policy-decision agents

WaitKWordAgent::WaitKWordAgent(int k) : k_(k) {
    if (k < 1) {
        throw InvalidK("wait-k agent requires k >= 1, got " + std::to_string(k));
    }
}

Decision WaitKWordAgent::decide(const Memory& memory, bool source_exhausted) {
    if (source_exhausted) return Decision::Write;
    return memory.words_read() - memory.words_written() >= k_ ? Decision::Write : Decision::Read;
}

ScheduledPolicyAgent::ScheduledPolicyAgent(WordPolicy schedule) : schedule_(std::move(schedule)) {
    if (schedule_.read_counts.empty()) {
        throw ValidationError("scheduled policy agent needs a non-empty schedule");
    }
    int prev = 1;
    for (int v : schedule_.read_counts) {
        if (v < 1 || v < prev) {
            throw ValidationError("schedule must be non-decreasing with entries >= 1");
        }
        prev = v;
    }
}

Decision ScheduledPolicyAgent::decide(const Memory& memory, bool source_exhausted) {
    if (source_exhausted) return Decision::Write;
    std::size_t next = static_cast<std::size_t>(memory.words_written());
    if (next >= schedule_.read_counts.size()) next = schedule_.read_counts.size() - 1;
    return memory.words_read() >= schedule_.read_counts[next] ? Decision::Write : Decision::Read;
}

// ---------------------------------------------------------------------------
// Translation agents

std::optional<std::string> OracleAgent::next_word(const Memory&) {
    if (next_ >= reference_.size()) return std::nullopt;
    return reference_[next_++];
}

std::optional<std::string> EchoAgent::next_word(const Memory& memory) {
    if (consumed_ >= memory.source_words().size()) return std::nullopt;
    return memory.source_words()[consumed_++];
}

// ---------------------------------------------------------------------------
// Remote agent

struct RemoteAgent::Client {
    httplib::Client http;
    std::string path;

    Client(const std::string& base, std::string path_, double timeout_seconds)
        : http(base), path(std::move(path_)) {
        auto micros = std::chrono::microseconds(
            static_cast<long long>(std::max(timeout_seconds, 0.001) * 1e6));
        http.set_connection_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(micros));
        http.set_read_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(micros));
        http.set_write_timeout(std::chrono::duration_cast<std::chrono::milliseconds>(micros));
        http.set_keep_alive(true);
    }
};

RemoteAgent::RemoteAgent(RemoteAgentOptions options, PromptTemplate tmpl)
    : options_(std::move(options)), template_(std::move(tmpl)) {
    const std::string& url = options_.endpoint;
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos || url.substr(0, scheme_end) != "http") {
        throw ConfigError("remote endpoint must be an http:// URL, got '" + url + "'");
    }
    auto path_start = url.find('/', scheme_end + 3);
    std::string base = path_start == std::string::npos ? url : url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);
    if (base.size() <= scheme_end + 3) {
        throw ConfigError("remote endpoint has no host: '" + url + "'");
    }
    client_ = std::make_unique<Client>(base, std::move(path), options_.timeout_seconds);
}

RemoteAgent::~RemoteAgent() = default;

std::optional<std::string> RemoteAgent::next_word(const Memory& memory) {
    nlohmann::json request{{"prompt", render_prompt(template_, memory)},
                           {"max_new_tokens", options_.max_new_tokens},
                           {"greedy", true},
                           {"stop", nlohmann::json::array({" "})}};
    const std::string body = request.dump();

    httplib::Result res;
    int attempts = 0;
    const int max_attempts = std::max(options_.max_attempts, 1);
    while (true) {
        ++attempts;
        res = client_->http.Post(client_->path, body, "application/json");
        if (res || attempts >= max_attempts) break;
    }
    if (!res) {
        throw AgentUnavailable("remote agent transport failure: " + httplib::to_string(res.error()),
                               {true, 0, attempts});
    }
    if (res->status < 200 || res->status >= 300) {
        throw AgentUnavailable("remote agent returned HTTP " + std::to_string(res->status),
                               {res->status >= 500, res->status, attempts});
    }
    auto response = nlohmann::json::parse(res->body, nullptr, false);
    if (response.is_discarded() || !response.is_object() || !response.contains("text") ||
        !response["text"].is_string()) {
        throw AgentUnavailable("remote agent response is not {\"text\": string}",
                               {false, res->status, attempts});
    }

    std::string text = response["text"].get<std::string>();
    std::size_t lo = 0, hi = text.size();
    while (lo < hi && std::isspace(static_cast<unsigned char>(text[lo]))) ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(text[hi - 1]))) --hi;
    text = text.substr(lo, hi - lo);

    if (text.empty() || text.rfind(options_.eos_sentinel, 0) == 0) {
        return std::nullopt;
    }
    std::size_t end = 0;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    return text.substr(0, end);
}

}  // namespace simt
