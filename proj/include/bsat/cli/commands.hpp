#pragma once

#include "bsat/arrangement.hpp"
#include "bsat/cli/report.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bsat::cli {

enum ExitCode : int { Ok = 0, CheckFailed = 1, Usage = 2, Precondition = 3 };

/// "n=2..3,k=n..6": inclusive ranges; k bounds may be written relative to n
/// ("n", "n+1", "n-1"). Instances with k < n are dropped.
std::vector<std::pair<std::size_t, std::size_t>> parse_grid(const std::string& spec);

/// 1-based, comma separated hyperplane indices, repeats allowed.
std::vector<std::size_t> parse_index_list(const std::string& text, std::size_t k);

/// BSAT_ARR_THREADS if set and positive, otherwise the hardware concurrency.
std::size_t thread_limit();

// The functions below fill `results` and `checks`; `run` adds the command
// echo, input digest and timing.
RunReport bfunction_generic_report(std::size_t n, std::size_t k);
RunReport bfunction_isolated_report(const Arrangement& a);
RunReport milnor_report(const Arrangement& a, std::optional<unsigned> max_degree);
RunReport length_report(const Arrangement& a);
RunReport rewrite_report(const Arrangement& a, const std::vector<std::size_t>& factors);

/// All theorem checks for one generic arrangement, labelled with `instance`.
std::vector<Check> verify_checks(const Arrangement& a, const std::string& instance);
RunReport verify_report(const std::vector<std::pair<std::string, Arrangement>>& instances, std::size_t threads);

/// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace bsat::cli
