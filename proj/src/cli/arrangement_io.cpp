#include "bsat/cli/arrangement_io.hpp"

#include <fstream>
#include <sstream>

namespace bsat::cli {

namespace {

Rational coefficient_from_json(const nlohmann::json& c)
{
    if (c.is_string()) {
        try {
            return parse_rational(c.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
    if (c.is_number_integer())
        return Rational(c.dump());
    throw InputError("coefficient " + c.dump() + " is not an exact rational (use a string \"p/q\")");
}

} // namespace

Arrangement arrangement_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("n") || !j.contains("hyperplanes"))
        throw InputError("arrangement JSON needs keys \"n\" and \"hyperplanes\"");
    if (!j["n"].is_number_unsigned() || j["n"].get<long>() < 1)
        throw InputError("\"n\" must be a positive integer");
    const auto n = j["n"].get<std::size_t>();
    if (!j["hyperplanes"].is_array() || j["hyperplanes"].empty())
        throw InputError("\"hyperplanes\" must be a nonempty array");
    std::vector<Hyperplane> planes;
    for (const auto& row : j["hyperplanes"]) {
        if (!row.is_array() || row.size() != n)
            throw InputError("each hyperplane needs exactly n = " + std::to_string(n) + " coefficients");
        std::vector<Rational> coeffs;
        for (const auto& c : row)
            coeffs.push_back(coefficient_from_json(c));
        try {
            planes.emplace_back(std::move(coeffs));
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }
    try {
        return Arrangement(n, std::move(planes));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

Arrangement arrangement_from_text(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    return arrangement_from_json(j);
}

Arrangement read_arrangement_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open input file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return arrangement_from_text(buf.str());
}

nlohmann::json arrangement_to_json(const Arrangement& a)
{
    nlohmann::json planes = nlohmann::json::array();
    for (const auto& h : a.hyperplanes()) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& c : h.coefficients())
            row.push_back(to_string(c));
        planes.push_back(std::move(row));
    }
    return {{"n", a.n()}, {"hyperplanes", std::move(planes)}};
}

} // namespace bsat::cli
