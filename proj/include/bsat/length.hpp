#pragma once

#include "bsat/arrangement.hpp"

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

namespace bsat {

/// Lengths of already-seen sub-arrangements, keyed by ambient dimension and
/// the sorted normalized hyperplanes. Safe to share between threads.
class LengthMemo {
public:
    using Key = std::pair<std::size_t, std::vector<Hyperplane>>;

    std::optional<unsigned long> find(const Key& key) const;
    void insert(const Key& key, unsigned long value);
    std::size_t size() const;

private:
    mutable std::mutex mutex_;
    std::map<Key, unsigned long> values_;
};

/// True iff the k forms are linearly independent (rank k).
bool h_top_nonvanishing(const Arrangement& a);

/// Length of R_n[Q^{-1}] from
///   l(A) = sum_{i>=1} (-1)^{i+1} sum_{|I|=i} l(A minus I) + [rank A = k],
/// with l(empty) = 1.
unsigned long holonomic_length(const Arrangement& a);
unsigned long holonomic_length(const Arrangement& a, LengthMemo& memo);

struct LengthBreakdown {
    unsigned long length = 0;
    /// subtotals[i-1] = sum over |I| = i of l(A minus I), before the sign.
    std::vector<unsigned long> subtotals;
    bool top_nonvanishing = false;
};

/// The recursion's top level, with per-|I| subtotals.
LengthBreakdown length_breakdown(const Arrangement& a);

/// Length for a generic arrangement with parameters (n, k).
unsigned long length_profile(std::size_t n, std::size_t k);

} // namespace bsat
