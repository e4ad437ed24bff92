#include "kns/lof.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace kns {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace

LofReport lof_score(const Dataset& ds, const LofParams& params) {
    const std::size_t n = ds.n();
    const std::size_t m = ds.m();
    const int k = params.k_nn;
    if (k < 1) throw std::invalid_argument("lof: k_nn must be >= 1");
    if (n <= static_cast<std::size_t>(k) + 1)
        throw std::invalid_argument("lof: need n > k_nn + 1");

    const auto t0 = std::chrono::steady_clock::now();

    std::vector<double> dist(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double d = ds.at(a, i) - ds.at(b, i);
                s += d * d;
            }
            dist[a * n + b] = dist[b * n + a] = std::sqrt(s);
        }
    }

    // Tie-inclusive k-distance neighborhoods.
    std::vector<double> k_distance(n);
    std::vector<std::vector<std::size_t>> neighbors(n);
    std::vector<double> buf;
    for (std::size_t p = 0; p < n; ++p) {
        buf.clear();
        for (std::size_t o = 0; o < n; ++o)
            if (o != p) buf.push_back(dist[p * n + o]);
        std::nth_element(buf.begin(), buf.begin() + (k - 1), buf.end());
        k_distance[p] = buf[k - 1];
        for (std::size_t o = 0; o < n; ++o)
            if (o != p && dist[p * n + o] <= k_distance[p])
                neighbors[p].push_back(o);
    }

    std::vector<double> lrd(n);
    for (std::size_t p = 0; p < n; ++p) {
        double reach_sum = 0.0;
        for (std::size_t o : neighbors[p])
            reach_sum += std::max(k_distance[o], dist[p * n + o]);
        // Floor guards coincident-duplicate neighborhoods.
        reach_sum = std::max(reach_sum, 1e-12);
        lrd[p] = neighbors[p].size() / reach_sum;
    }

    LofReport report;
    report.params = params;
    report.n = n;
    report.m = m;
    report.points.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        double s = 0.0;
        for (std::size_t o : neighbors[p]) s += lrd[o] / lrd[p];
        report.points[p].point_id = static_cast<int>(p) + 1;
        report.points[p].lrd = lrd[p];
        report.points[p].lof = s / neighbors[p].size();
    }

    std::sort(report.points.begin(), report.points.end(),
              [](const LofPointScore& a, const LofPointScore& b) {
                  if (a.lof != b.lof) return a.lof > b.lof;
                  return a.point_id < b.point_id;
              });
    for (std::size_t r = 0; r < n; ++r)
        report.points[r].rank = static_cast<int>(r) + 1;

    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return report;
}

void write_lof_csv(std::ostream& out, const LofReport& report,
                   const std::vector<std::string>& header_comments) {
    for (const auto& c : header_comments) out << "# " << c << "\n";
    out << "point_id,lrd,lof,rank\n";
    for (const auto& p : report.points)
        out << p.point_id << "," << format_double(p.lrd) << ","
            << format_double(p.lof) << "," << p.rank << "\n";
}

}  // namespace kns
