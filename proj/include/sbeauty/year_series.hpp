#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbeauty {

/// Per-year integer counts over a closed year range [start_year, end_year].
struct YearSeries {
    int start_year = 0;
    std::vector<std::int64_t> counts;

    YearSeries() = default;
    YearSeries(int start, int end) : start_year(start) {
        if (end < start) throw std::invalid_argument("YearSeries: end year before start year");
        counts.assign(static_cast<std::size_t>(end - start + 1), 0);
    }

    int end_year() const { return start_year + static_cast<int>(counts.size()) - 1; }
    bool contains(int year) const { return year >= start_year && year <= end_year(); }

    std::int64_t at(int year) const {
        return contains(year) ? counts[static_cast<std::size_t>(year - start_year)] : 0;
    }
    void add(int year, std::int64_t delta) {
        if (contains(year)) counts[static_cast<std::size_t>(year - start_year)] += delta;
    }

    std::int64_t sum() const {
        std::int64_t total = 0;
        for (const auto c : counts) total += c;
        return total;
    }

    /// Inclusive partial sum; years outside the range contribute zero.
    std::int64_t sum_range(int from, int to) const {
        std::int64_t total = 0;
        for (int y = from; y <= to; ++y) total += at(y);
        return total;
    }
};

/// Closed year interval.
struct YearRange {
    int first = 0;
    int last = 0;

    bool empty() const { return last < first; }
    int length() const { return last - first + 1; }
    bool contains(int year) const { return year >= first && year <= last; }

    std::string label() const {
        return std::to_string(first) + "-" + std::to_string(last);
    }
};

}  // namespace sbeauty
