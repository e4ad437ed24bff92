#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "kns/dataset.hpp"

namespace kns {

/// Observed and extended bounds of one dimension. The raw range is enlarged
/// by 0.1% (0.05% per side) so that boundary points do not inflate the two
/// end sections. A constant column is degenerate: width 0, one section.
struct DimensionRange {
    double lo_raw = 0.0;
    double hi_raw = 0.0;
    double lo_ext = 0.0;
    double hi_ext = 0.0;
    double width = 0.0;

    bool degenerate() const { return width <= 0.0; }
};

std::vector<DimensionRange> compute_ranges(const Dataset& ds, int scn);

/// Equi-width section grid over all dimensions: each point's section id per
/// dimension (1..scn), each section's population, and the mean density of
/// the non-empty sections per dimension. Immutable once built.
class SectionSpace {
public:
    static SectionSpace build(const Dataset& ds, int scn,
                              std::ostream* diagnostics = nullptr);

    int scn() const { return scn_; }
    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }

    const DimensionRange& range(std::size_t dim) const { return ranges_[dim]; }

    /// Section id of a point in a dimension, 1-based.
    int section_of(std::size_t point, std::size_t dim) const {
        return point_info_[point * m_ + dim];
    }

    /// Number of points in section `sec` (1-based) of a dimension.
    int section_count(std::size_t dim, int sec) const {
        return section_info_[static_cast<std::size_t>(sec - 1) * m_ + dim];
    }

    /// n divided by the number of non-empty sections in the dimension.
    double mean_density(std::size_t dim) const { return mean_density_[dim]; }

    /// Section distance in dimension `dim`: |sec(p) - sec(q)| + 1.
    int dists(std::size_t dim, std::size_t p, std::size_t q) const {
        int a = section_of(p, dim);
        int b = section_of(q, dim);
        return (a > b ? a - b : b - a) + 1;
    }

    /// Point indices populating section `sec` of a dimension.
    std::vector<std::size_t> members(std::size_t dim, int sec) const;

    /// Debug dump of the section population table: one row per section id,
    /// one column per dimension.
    void dump_section_info(std::ostream& out) const;

private:
    SectionSpace() = default;

    int scn_ = 0;
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<DimensionRange> ranges_;
    std::vector<std::int32_t> point_info_;    // n*m, row-major per point
    std::vector<std::int32_t> section_info_;  // scn*m, row-major per section
    std::vector<double> mean_density_;        // m
};

}  // namespace kns
