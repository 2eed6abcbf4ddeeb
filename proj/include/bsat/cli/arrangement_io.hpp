#pragma once

#include "bsat/arrangement.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace bsat::cli {

/// Malformed user input; maps to the usage exit code.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"n": int, "hyperplanes": [["p/q" or "p", ...], ...]}. Coefficients may
/// also be JSON integers; floating-point numbers are rejected.
Arrangement arrangement_from_json(const nlohmann::json& j);
Arrangement arrangement_from_text(const std::string& text);
Arrangement read_arrangement_file(const std::string& path);

/// Canonical form: normalized coefficients as rational strings.
nlohmann::json arrangement_to_json(const Arrangement& a);

} // namespace bsat::cli
