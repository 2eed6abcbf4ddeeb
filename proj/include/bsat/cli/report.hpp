#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bsat::cli {

/// pass and fail apply to proved statements; unverified and consistent to
/// conjecture-level ones; refuted marks a literal claim that computation
/// contradicts (see the README).
enum class Status { Pass, Fail, Unverified, Consistent, Refuted };

std::string to_string(Status s);
Status status_from_string(const std::string& s);

struct Check {
    std::string name;
    std::string reference;  ///< which statement the check instantiates
    Status status = Status::Unverified;
    std::string instance;   ///< e.g. "n=2,k=3,r=2"; empty when not applicable

    friend bool operator==(const Check&, const Check&) = default;
};

struct RunReport {
    std::vector<std::string> command;
    std::string input_digest;  ///< sha256 hex of the canonical input
    nlohmann::json results = nlohmann::json::object();
    std::vector<Check> checks;
    std::optional<long> wall_time_ms;

    /// True iff some proved-statement check failed.
    bool failed() const;
};

nlohmann::json to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string serialize(const RunReport& r);
std::string render_table(const RunReport& r);

std::string sha256_hex(const std::string& data);

} // namespace bsat::cli
