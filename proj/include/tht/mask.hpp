#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "tht/error.hpp"
#include "tht/series.hpp"

namespace tht {

/// Half-open index interval [begin, end).
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    [[nodiscard]] bool empty() const noexcept { return end <= begin; }
    [[nodiscard]] std::size_t size() const noexcept { return empty() ? 0 : end - begin; }
    [[nodiscard]] bool contains(std::size_t m) const noexcept { return m >= begin && m < end; }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Truncation geometries: C1 interior data on both sides, C2 exterior F data
/// only, C3 one-sided interior f data with F data reaching past an endpoint.
enum class ConditionTag { C1, C2, C3 };

[[nodiscard]] inline std::string to_string(ConditionTag c) {
    switch (c) {
        case ConditionTag::C1: return "C1";
        case ConditionTag::C2: return "C2";
        case ConditionTag::C3: return "C3";
    }
    return "?";
}

[[nodiscard]] inline ConditionTag condition_tag_from_string(const std::string& s) {
    if (s == "C1") return ConditionTag::C1;
    if (s == "C2") return ConditionTag::C2;
    if (s == "C3") return ConditionTag::C3;
    throw std::invalid_argument("unknown condition tag '" + s + "' (expected C1, C2 or C3)");
}

/// Known sample indices: f on CGL nodes, F on CGL midpoints.
struct KnownMask {
    IndexRange f_range;
    IndexRange F_range;
    ConditionTag condition = ConditionTag::C1;

    static KnownMask full(std::size_t n) { return {{0, n}, {0, n}, ConditionTag::C1}; }

    /// Checks ranges against a grid of size n. Under C1 both ranges must be
    /// non-empty and the abscissa hulls of the two ranges must intersect.
    void validate(std::size_t n) const {
        auto check = [n](const IndexRange& r, const char* name) {
            if (r.end > n || r.begin > r.end)
                throw std::invalid_argument(std::string("mask: ") + name + " [" + std::to_string(r.begin) + ", " +
                                            std::to_string(r.end) + ") outside [0, " + std::to_string(n) + ")");
        };
        check(f_range, "f_range");
        check(F_range, "F_range");
        if (f_range.empty() && F_range.empty()) throw std::invalid_argument("mask: no known samples");
        if (condition != ConditionTag::C1) return;
        if (f_range.empty() || F_range.empty())
            throw std::invalid_argument("mask: condition C1 needs known samples of both f and F");
        if (!overlaps(n))
            throw degenerate_problem(
                "mask: the known f and F intervals do not overlap; the truncated problem then has no unique "
                "solution (semicircles f_eps with eps > eps0 all share F(s) = s on (-eps0, eps0))");
    }

    /// Whether [t_{m4-1}, t_{m3}] and [s_{m2-1}, s_{m1}] intersect.
    [[nodiscard]] bool overlaps(std::size_t n) const {
        if (f_range.empty() || F_range.empty()) return false;
        const Grid t(GridKind::CglNode, n), s(GridKind::CglMid, n);
        const double lo = std::max(t[f_range.end - 1], s[F_range.end - 1]);
        const double hi = std::min(t[f_range.begin], s[F_range.begin]);
        return lo <= hi;
    }
};

}  // namespace tht
