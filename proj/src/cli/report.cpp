#include "bsat/cli/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <stdexcept>

namespace bsat::cli {

namespace {

constexpr std::array<std::pair<Status, const char*>, 5> status_names{{
    {Status::Pass, "pass"},
    {Status::Fail, "fail"},
    {Status::Unverified, "unverified"},
    {Status::Consistent, "consistent"},
    {Status::Refuted, "refuted"},
}};

std::string flatten(const nlohmann::json& v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

} // namespace

std::string to_string(Status s)
{
    for (const auto& [value, name] : status_names)
        if (value == s)
            return name;
    throw std::logic_error("unknown status");
}

Status status_from_string(const std::string& s)
{
    for (const auto& [value, name] : status_names)
        if (s == name)
            return value;
    throw std::invalid_argument("unknown check status \"" + s + "\"");
}

bool RunReport::failed() const
{
    return std::any_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == Status::Fail; });
}

nlohmann::json to_json(const RunReport& r)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json entry{{"name", c.name}, {"reference", c.reference}, {"status", to_string(c.status)}};
        if (!c.instance.empty())
            entry["instance"] = c.instance;
        checks.push_back(std::move(entry));
    }
    nlohmann::json j{
        {"command", r.command},
        {"input_digest", r.input_digest},
        {"results", r.results},
        {"checks", std::move(checks)},
    };
    if (r.wall_time_ms)
        j["wall_time_ms"] = *r.wall_time_ms;
    return j;
}

RunReport report_from_json(const nlohmann::json& j)
{
    RunReport r;
    r.command = j.at("command").get<std::vector<std::string>>();
    r.input_digest = j.at("input_digest").get<std::string>();
    r.results = j.at("results");
    for (const auto& c : j.at("checks")) {
        Check check{c.at("name").get<std::string>(), c.at("reference").get<std::string>(),
                    status_from_string(c.at("status").get<std::string>()), ""};
        if (c.contains("instance"))
            check.instance = c["instance"].get<std::string>();
        r.checks.push_back(std::move(check));
    }
    if (j.contains("wall_time_ms"))
        r.wall_time_ms = j["wall_time_ms"].get<long>();
    return r;
}

std::string serialize(const RunReport& r)
{
    return to_json(r).dump(2) + "\n";
}

std::string render_table(const RunReport& r)
{
    std::string out = "command: ";
    for (const auto& part : r.command)
        out += part + " ";
    out += "\ninput sha256: " + r.input_digest + "\n";
    for (const auto& [key, value] : r.results.items())
        out += key + ": " + flatten(value) + "\n";
    if (!r.checks.empty()) {
        std::size_t width = 0;
        for (const auto& c : r.checks)
            width = std::max(width, c.name.size() + (c.instance.empty() ? 0 : c.instance.size() + 3));
        out += "\n";
        for (const auto& c : r.checks) {
            std::string label = c.name + (c.instance.empty() ? "" : " [" + c.instance + "]");
            label.resize(width, ' ');
            out += label + "  " + to_string(c.status) + "\n";
        }
    }
    if (r.wall_time_ms)
        out += "wall time: " + std::to_string(*r.wall_time_ms) + " ms\n";
    return out;
}

std::string sha256_hex(const std::string& data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

} // namespace bsat::cli
