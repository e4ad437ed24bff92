// Shared helpers for the test suites: dataset builders and fixed fixtures.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kns/dataset.hpp"

namespace kns_test {

inline kns::Dataset make_dataset(std::size_t m, std::vector<double> values,
                                 std::vector<kns::Label> labels = {}) {
    const std::size_t n = values.size() / m;
    std::vector<int> ids(n);
    for (std::size_t j = 0; j < n; ++j) ids[j] = static_cast<int>(j) + 1;
    return kns::Dataset(m, std::move(values), std::move(ids), std::move(labels));
}

// Column values that land in prescribed sections: value sec - 0.5 falls in
// section `sec` once the raw range [0.5, scn - 0.5] is extended by 0.1%.
// counts.front() and counts.back() must be nonzero so the range is pinned.
inline std::vector<double> column_with_counts(const std::vector<int>& counts) {
    std::vector<double> out;
    for (std::size_t sec = 1; sec <= counts.size(); ++sec)
        for (int c = 0; c < counts[sec - 1]; ++c)
            out.push_back(static_cast<double>(sec) - 0.5);
    return out;
}

// 23 points spanning x in [5, 23] and y in [6, 25].
inline kns::Dataset fig2_dataset() {
    static const double pts[23][2] = {
        {5, 8},     {6, 7},      {7, 6},    {8, 9},      {9, 10},  {10, 8},
        {11, 12},   {12, 11},    {13, 14},  {14, 13},    {15, 16}, {16, 15},
        {17, 18},   {18, 17},    {19, 20},  {20, 19},    {21, 22}, {22, 21},
        {23, 25},   {7.5, 9.5},  {12.5, 12}, {17.5, 19}, {20.5, 23}};
    std::vector<double> values;
    for (const auto& p : pts) {
        values.push_back(p[0]);
        values.push_back(p[1]);
    }
    return make_dataset(2, std::move(values));
}

// Uniform lattice: every section of every dimension holds exactly
// n / scn points.
inline kns::Dataset lattice_dataset(std::size_t n, std::size_t m, int scn) {
    std::vector<double> values(n * m);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i)
            values[j * m + i] = static_cast<double>((j + i) % scn) + 0.5;
    return make_dataset(m, std::move(values));
}

inline kns::Dataset random_dataset(std::size_t n, std::size_t m,
                                   std::uint64_t seed, double lo = 0.0,
                                   double hi = 100.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> values(n * m);
    for (auto& v : values) v = dist(rng);
    return make_dataset(m, std::move(values));
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace kns_test
