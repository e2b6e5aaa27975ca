#include "simt/policy.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "simt/tokenize.hpp"

namespace simt {

namespace {

std::vector<int> wait_k_schedule(int k, int source_len, int target_len) {
    if (k < 1) {
        throw InvalidK("wait-k requires k >= 1, got " + std::to_string(k));
    }
    if (source_len < 1 || target_len < 1) {
        throw LengthMismatch("wait-k schedule needs source and target lengths >= 1");
    }
    std::vector<int> reads(target_len);
    for (int n = 1; n <= target_len; ++n) {
        reads[n - 1] = std::min(k + n - 1, source_len);
    }
    return reads;
}

}  // namespace

TokenPolicy wait_k_token_policy(int k, int source_tokens, int target_tokens) {
    return {wait_k_schedule(k, source_tokens, target_tokens)};
}

WordPolicy wait_k_word_policy(int k, int source_words, int target_words) {
    return {wait_k_schedule(k, source_words, target_words)};
}

WordPolicy to_word_policy(const TokenPolicy& token_policy, const Tokenization& source,
                          const Tokenization& target, int source_word_count) {
    if (token_policy.length() != target.token_count()) {
        throw LengthMismatch("token policy has " + std::to_string(token_policy.length()) +
                             " entries for " + std::to_string(target.token_count()) +
                             " target tokens");
    }
    if (source.word_count() != source_word_count) {
        throw LengthMismatch("source tokenization covers " + std::to_string(source.word_count()) +
                             " words, expected " + std::to_string(source_word_count));
    }
    validate(token_policy, source.token_count());

    WordPolicy word_policy;
    word_policy.read_counts.reserve(target.word_count());
    for (int n = 0; n < target.token_count(); ++n) {
        if (!target.is_word_final[n]) continue;
        int complete = complete_words_in_prefix(source, token_policy.read_counts[n]);
        word_policy.read_counts.push_back(std::min(complete + 1, source_word_count));
    }
    return word_policy;
}

WordPolicy apply_boundary_restrictions(const WordPolicy& policy, const BoundaryConfig& cfg,
                                       int source_word_count) {
    validate(cfg);
    WordPolicy restricted;
    restricted.read_counts.reserve(policy.read_counts.size());
    for (std::size_t idx = 0; idx < policy.read_counts.size(); ++idx) {
        // 64-bit intermediates: i-1+max_initial_reads may exceed int range
        // for unbounded configurations.
        long long i = static_cast<long long>(idx) + 1;
        long long lo = i - 1 + cfg.min_initial_reads;
        long long hi = i - 1 + cfg.max_initial_reads;
        long long r = std::min(std::max<long long>(policy.read_counts[idx], lo), hi);
        r = std::min<long long>(r, source_word_count);
        restricted.read_counts.push_back(static_cast<int>(r));
    }
    return restricted;
}

std::pair<std::vector<int>, RepairReport> validate_and_repair(const std::vector<int>& values,
                                                              int upper) {
    if (upper < 1) {
        throw IndexOutOfRange("repair bound must be >= 1, got " + std::to_string(upper));
    }
    std::vector<int> repaired;
    repaired.reserve(values.size());
    RepairReport report;
    int floor = 1;
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        int v = std::clamp(values[idx], 1, upper);
        v = std::max(v, floor);
        if (v != values[idx]) {
            report.entries.push_back({static_cast<int>(idx) + 1, values[idx], v});
        }
        repaired.push_back(v);
        floor = v;
    }
    return {std::move(repaired), std::move(report)};
}

namespace {

using nlohmann::json;

json parse_jsonl_line(const std::string& path, int line_no, const std::string& line) {
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
        throw TraceFormatError(path + ":" + std::to_string(line_no) + ": not a JSON object");
    }
    return record;
}

std::vector<int> read_int_array(const std::string& path, int line_no, const json& record,
                                const char* key) {
    if (!record.contains(key) || !record[key].is_array()) {
        throw TraceFormatError(path + ":" + std::to_string(line_no) + ": missing array field '" +
                               key + "'");
    }
    std::vector<int> values;
    for (const auto& v : record[key]) {
        if (!v.is_number_integer()) {
            throw TraceFormatError(path + ":" + std::to_string(line_no) + ": non-integer entry in '" +
                                   key + "'");
        }
        values.push_back(v.get<int>());
    }
    return values;
}

std::string read_id(const std::string& path, int line_no, const json& record) {
    if (!record.contains("id") || !record["id"].is_string()) {
        throw TraceFormatError(path + ":" + std::to_string(line_no) + ": missing string field 'id'");
    }
    return record["id"].get<std::string>();
}

template <typename Fn>
void for_each_jsonl_record(const std::string& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open policy file: " + path);
    }
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        fn(line_no, parse_jsonl_line(path, line_no, line));
    }
}

}  // namespace

std::vector<PolicyTrace> load_policy_traces(const std::string& path) {
    std::vector<PolicyTrace> traces;
    for_each_jsonl_record(path, [&](int line_no, const json& record) {
        PolicyTrace trace;
        trace.sentence_id = read_id(path, line_no, record);
        trace.policy.read_counts = read_int_array(path, line_no, record, "h");
        traces.push_back(std::move(trace));
    });
    return traces;
}

void save_policy_traces(const std::string& path, const std::vector<PolicyTrace>& traces) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write policy file: " + path);
    }
    for (const auto& t : traces) {
        json record{{"id", t.sentence_id}, {"h", t.policy.read_counts}};
        out << record.dump() << '\n';
    }
}

std::vector<WordPolicyRecord> load_word_policies(const std::string& path) {
    std::vector<WordPolicyRecord> records;
    for_each_jsonl_record(path, [&](int line_no, const json& record) {
        WordPolicyRecord r;
        r.sentence_id = read_id(path, line_no, record);
        if (record.contains("h") && !record.contains("g")) {
            throw TraceFormatError(path + ":" + std::to_string(line_no) +
                                   ": found a token-level trace ('h'); convert it to a word-level "
                                   "policy ('g') first");
        }
        r.policy.read_counts = read_int_array(path, line_no, record, "g");
        records.push_back(std::move(r));
    });
    return records;
}

void save_word_policies(const std::string& path, const std::vector<WordPolicyRecord>& records) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write policy file: " + path);
    }
    for (const auto& r : records) {
        json record{{"id", r.sentence_id}, {"g", r.policy.read_counts}};
        out << record.dump() << '\n';
    }
}

}  // namespace simt
