#include "kns/section_space.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace kns {

std::vector<DimensionRange> compute_ranges(const Dataset& ds, int scn) {
    if (ds.n() == 0) throw std::invalid_argument("compute_ranges: empty dataset");
    if (scn < 1) throw std::invalid_argument("compute_ranges: scn must be >= 1");

    std::vector<DimensionRange> ranges(ds.m());
    for (std::size_t i = 0; i < ds.m(); ++i) {
        double lo = ds.at(0, i), hi = ds.at(0, i);
        for (std::size_t j = 1; j < ds.n(); ++j) {
            lo = std::min(lo, ds.at(j, i));
            hi = std::max(hi, ds.at(j, i));
        }
        DimensionRange& r = ranges[i];
        r.lo_raw = lo;
        r.hi_raw = hi;
        if (hi > lo) {
            const double pad = 0.0005 * (hi - lo);  // 0.1% total, split evenly
            r.lo_ext = lo - pad;
            r.hi_ext = hi + pad;
            r.width = (r.hi_ext - r.lo_ext) / scn;
        } else {
            r.lo_ext = lo;
            r.hi_ext = hi;
            r.width = 0.0;
        }
    }
    return ranges;
}

SectionSpace SectionSpace::build(const Dataset& ds, int scn,
                                 std::ostream* diagnostics) {
    SectionSpace s;
    s.scn_ = scn;
    s.n_ = ds.n();
    s.m_ = ds.m();
    s.ranges_ = compute_ranges(ds, scn);
    s.point_info_.resize(s.n_ * s.m_);
    s.section_info_.assign(static_cast<std::size_t>(scn) * s.m_, 0);
    s.mean_density_.resize(s.m_);

    if (diagnostics && static_cast<std::size_t>(scn) > s.n_)
        *diagnostics << "warning: scn (" << scn << ") exceeds point count ("
                     << s.n_ << "); most sections will be empty\n";

    for (std::size_t i = 0; i < s.m_; ++i) {
        const DimensionRange& r = s.ranges_[i];
        for (std::size_t j = 0; j < s.n_; ++j) {
            int sec = 1;
            if (!r.degenerate()) {
                sec = static_cast<int>((ds.at(j, i) - r.lo_ext) / r.width) + 1;
                sec = std::clamp(sec, 1, scn);
            }
            s.point_info_[j * s.m_ + i] = sec;
            ++s.section_info_[static_cast<std::size_t>(sec - 1) * s.m_ + i];
        }
        int non_empty = 0;
        for (int g = 1; g <= scn; ++g)
            if (s.section_count(i, g) > 0) ++non_empty;
        s.mean_density_[i] = static_cast<double>(s.n_) / non_empty;
    }
    return s;
}

std::vector<std::size_t> SectionSpace::members(std::size_t dim, int sec) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n_; ++j)
        if (section_of(j, dim) == sec) out.push_back(j);
    return out;
}

void SectionSpace::dump_section_info(std::ostream& out) const {
    out << "section";
    for (std::size_t i = 0; i < m_; ++i) out << ",p" << (i + 1);
    out << "\n";
    for (int g = 1; g <= scn_; ++g) {
        out << g;
        for (std::size_t i = 0; i < m_; ++i) out << "," << section_count(i, g);
        out << "\n";
    }
}

}  // namespace kns
