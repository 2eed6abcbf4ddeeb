#include "bsat/length.hpp"

#include "bsat/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace bsat {

std::optional<unsigned long> LengthMemo::find(const Key& key) const
{
    std::lock_guard lock(mutex_);
    auto it = values_.find(key);
    if (it == values_.end())
        return std::nullopt;
    return it->second;
}

void LengthMemo::insert(const Key& key, unsigned long value)
{
    std::lock_guard lock(mutex_);
    values_.emplace(key, value);
}

std::size_t LengthMemo::size() const
{
    std::lock_guard lock(mutex_);
    return values_.size();
}

namespace {

std::size_t planes_rank(const std::vector<Hyperplane>& planes)
{
    if (planes.empty())
        return 0;
    Matrix m;
    for (const auto& h : planes)
        m.push_back(h.coefficients());
    return rank(m);
}

std::vector<Hyperplane> without(const std::vector<Hyperplane>& planes, const IndexSet& removed)
{
    std::vector<Hyperplane> out;
    std::size_t r = 0;
    for (std::size_t i = 0; i < planes.size(); ++i) {
        if (r < removed.size() && removed[r] == i) {
            ++r;
            continue;
        }
        out.push_back(planes[i]);
    }
    return out;
}

unsigned long length_of(std::size_t n, std::vector<Hyperplane> planes, LengthMemo& memo);

LengthBreakdown breakdown_of(std::size_t n, const std::vector<Hyperplane>& planes, LengthMemo& memo)
{
    const std::size_t k = planes.size();
    LengthBreakdown out;
    long total = 0;
    for (std::size_t i = 1; i <= k; ++i) {
        unsigned long sub = 0;
        for (const auto& I : subsets(k, i))
            sub += length_of(n, without(planes, I), memo);
        out.subtotals.push_back(sub);
        total += (i % 2 ? 1 : -1) * static_cast<long>(sub);
    }
    out.top_nonvanishing = planes_rank(planes) == k;
    if (out.top_nonvanishing)
        total += 1;
    if (total < 1)
        throw std::logic_error("holonomic_length: recursion produced a non-positive length");
    out.length = static_cast<unsigned long>(total);
    return out;
}

unsigned long length_of(std::size_t n, std::vector<Hyperplane> planes, LengthMemo& memo)
{
    if (planes.empty())
        return 1;
    std::sort(planes.begin(), planes.end());
    LengthMemo::Key key{n, planes};
    if (auto hit = memo.find(key))
        return *hit;
    const unsigned long value = breakdown_of(n, planes, memo).length;
    memo.insert(key, value);
    return value;
}

} // namespace

bool h_top_nonvanishing(const Arrangement& a)
{
    return planes_rank(a.hyperplanes()) == a.k();
}

unsigned long holonomic_length(const Arrangement& a, LengthMemo& memo)
{
    return length_of(a.n(), a.hyperplanes(), memo);
}

unsigned long holonomic_length(const Arrangement& a)
{
    LengthMemo memo;
    return holonomic_length(a, memo);
}

LengthBreakdown length_breakdown(const Arrangement& a)
{
    LengthMemo memo;
    return breakdown_of(a.n(), a.hyperplanes(), memo);
}

unsigned long length_profile(std::size_t n, std::size_t k)
{
    if (n == 0 || k == 0)
        throw std::invalid_argument("length_profile: needs n >= 1 and k >= 1");
    return holonomic_length(generic_arrangement(n, k));
}

} // namespace bsat
