#include "kns/detector.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

namespace kns {

const char* to_string(Strategy s) {
    return s == Strategy::full ? "full" : "sampled";
}

const char* to_string(ScoreMode m) {
    switch (m) {
        case ScoreMode::si_desc: return "si_desc";
        case ScoreMode::si_asc: return "si_asc";
        case ScoreMode::abs_log: return "abs_log";
    }
    return "?";
}

int KnsParams::resolve_scn(std::size_t n) const {
    if (scn > 0) return scn;
    // Wide sections keep typical populations well above the small-section
    // threshold, so the second stage stays active; narrow grids neutralize
    // it and retrieval degrades measurably.
    int auto_scn = static_cast<int>(std::ceil(0.3 * std::sqrt(static_cast<double>(n))));
    return std::max(2, auto_scn);
}

void KnsParams::validate() const {
    if (k < 1) throw std::invalid_argument("kns: k must be >= 1");
    if (rounds < 1) throw std::invalid_argument("kns: rounds must be >= 1");
    if (scn != 0 && scn < 2) throw std::invalid_argument("kns: scn must be >= 2");
}

const PointScore& ScoreReport::by_id(int point_id) const {
    for (const auto& p : points)
        if (p.point_id == point_id) return p;
    throw std::invalid_argument("score report: unknown point id " +
                                std::to_string(point_id));
}

FirstProjection::FirstProjection(const SectionSpace& space) : m_(space.m()) {
    sdr_.assign(static_cast<std::size_t>(space.scn()) * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
        const double mean = space.mean_density(i);
        for (int g = 1; g <= space.scn(); ++g) {
            const int d = space.section_count(i, g);
            if (d > 0) {
                const double ratio = d / mean;
                sdr_[static_cast<std::size_t>(g - 1) * m_ + i] = ratio * ratio;
            }
        }
    }
}

namespace {

// Per-member mean squared section distance to the tie-inclusive k nearest
// section neighbors, computed on a histogram of target-section populations.
// Distance to the shell at radius r is r + 1, so the k-distance cut keeps
// whole shells and tie inclusion is automatic.
struct SectionProjector {
    const SectionSpace& space;
    int scn;
    std::vector<int> hist;  // target-section populations, 1-based

    explicit SectionProjector(const SectionSpace& s)
        : space(s), scn(s.scn()), hist(s.scn() + 1, 0) {}

    // members: points of one source section; fills num[p] = mean squared
    // dists over N_kn(p). Requires members.size() > k.
    void mean_sq_dists(const std::vector<std::size_t>& members,
                       std::size_t target_dim, int k,
                       std::vector<double>& num) {
        for (std::size_t q : members) ++hist[space.section_of(q, target_dim)];
        num.resize(members.size());
        for (std::size_t idx = 0; idx < members.size(); ++idx) {
            const int t0 = space.section_of(members[idx], target_dim);
            long count = hist[t0] - 1;  // co-located members, self excluded
            double sum = static_cast<double>(count);  // dist 1, squared
            int r = 0;
            while (count < k) {
                ++r;
                int c = 0;
                if (t0 - r >= 1) c += hist[t0 - r];
                if (t0 + r <= scn) c += hist[t0 + r];
                if (c == 0) {
                    if (t0 - r < 1 && t0 + r > scn) break;
                    continue;
                }
                const double d = r + 1;
                sum += c * d * d;
                count += c;
            }
            num[idx] = sum / count;
        }
        for (std::size_t q : members) --hist[space.section_of(q, target_dim)];
    }
};

std::vector<std::vector<std::size_t>> bucket_by_section(const SectionSpace& space,
                                                        std::size_t dim) {
    std::vector<std::vector<std::size_t>> buckets(space.scn() + 1);
    for (std::size_t j = 0; j < space.n(); ++j)
        buckets[space.section_of(j, dim)].push_back(j);
    return buckets;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace

std::vector<std::size_t> nearest_sections(const SectionSpace& space,
                                          std::size_t source_dim, int sec,
                                          std::size_t target_dim,
                                          std::size_t p, int k) {
    auto members = space.members(source_dim, sec);
    if (std::find(members.begin(), members.end(), p) == members.end())
        throw std::invalid_argument("nearest_sections: point not in section");
    if (members.size() <= static_cast<std::size_t>(k))
        throw std::invalid_argument(
            "nearest_sections: section population must exceed k");

    std::vector<int> d;
    d.reserve(members.size() - 1);
    for (std::size_t q : members)
        if (q != p) d.push_back(space.dists(target_dim, p, q));
    std::vector<int> sorted = d;
    std::nth_element(sorted.begin(), sorted.begin() + (k - 1), sorted.end());
    const int k_dist = sorted[k - 1];

    std::vector<std::size_t> out;
    std::size_t di = 0;
    for (std::size_t q : members) {
        if (q == p) continue;
        if (d[di++] <= k_dist) out.push_back(q);
    }
    return out;
}

std::vector<std::pair<std::size_t, double>> second_projection_sdr(
    const SectionSpace& space, std::size_t source_dim, int sec,
    std::size_t target_dim, int k) {
    if (source_dim == target_dim)
        throw std::invalid_argument("second_projection_sdr: i == j");
    auto members = space.members(source_dim, sec);
    std::vector<std::pair<std::size_t, double>> out;
    if (members.empty()) return out;

    KnsParams probe;
    probe.k = k;
    const int threshold = probe.small_section_threshold();
    out.reserve(members.size());
    if (members.size() < static_cast<std::size_t>(threshold)) {
        for (std::size_t p : members) out.emplace_back(p, 1.0);
        return out;
    }

    SectionProjector proj(space);
    std::vector<double> num;
    proj.mean_sq_dists(members, target_dim, k, num);
    const double denom =
        std::accumulate(num.begin(), num.end(), 0.0) / num.size();
    for (std::size_t idx = 0; idx < members.size(); ++idx)
        out.emplace_back(members[idx], num[idx] / denom);
    return out;
}

ScoreReport score(const SectionSpace& space, const KnsParams& params) {
    params.validate();
    const std::size_t n = space.n();
    const std::size_t m = space.m();
    const auto t0 = std::chrono::steady_clock::now();

    ScoreReport report;
    report.params = params;
    report.n = n;
    report.m = m;

    const int threshold = params.small_section_threshold();
    if (static_cast<double>(n) / space.scn() < threshold)
        report.warnings.push_back(
            "mean section population n/scn is below the small-section "
            "threshold; the second stage is likely neutralized");
    if (params.strategy == Strategy::sampled &&
        static_cast<long>(m) * params.rounds > params.max_projections)
        throw capacity_error(
            "kns: sampled workload m*rounds = " +
            std::to_string(static_cast<long>(m) * params.rounds) +
            " exceeds max_projections = " + std::to_string(params.max_projections));

    // First stage.
    FirstProjection first(space);
    std::vector<double> sum_first(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            sum_first[j] += first.for_point(space, j, i);

    // Second stage.
    std::vector<double> sum_second(n, 0.0);
    long count_second = 0;
    if (m >= 2) {
        SectionProjector proj(space);
        std::vector<double> num;
        auto project = [&](const std::vector<std::vector<std::size_t>>& buckets,
                           std::size_t target_dim) {
            for (int g = 1; g <= space.scn(); ++g) {
                const auto& members = buckets[g];
                if (members.empty()) continue;
                if (members.size() < static_cast<std::size_t>(threshold)) {
                    for (std::size_t p : members) sum_second[p] += 1.0;
                    continue;
                }
                proj.mean_sq_dists(members, target_dim, params.k, num);
                const double denom =
                    std::accumulate(num.begin(), num.end(), 0.0) / num.size();
                for (std::size_t idx = 0; idx < members.size(); ++idx)
                    sum_second[members[idx]] += num[idx] / denom;
            }
        };

        if (params.strategy == Strategy::full) {
            for (std::size_t i = 0; i < m; ++i) {
                auto buckets = bucket_by_section(space, i);
                for (std::size_t j = 0; j < m; ++j) {
                    if (j == i) continue;
                    project(buckets, j);
                }
            }
            count_second = static_cast<long>(m) * static_cast<long>(m - 1);
        } else {
            std::mt19937_64 rng(params.seed);
            std::vector<std::size_t> perm(m);
            std::iota(perm.begin(), perm.end(), 0);
            for (int c = 0; c < params.rounds; ++c) {
                std::shuffle(perm.begin(), perm.end(), rng);
                for (std::size_t idx = 0; idx < m; ++idx) {
                    const std::size_t i = perm[idx];
                    const std::size_t j = perm[(idx + 1) % m];
                    auto buckets = bucket_by_section(space, i);
                    project(buckets, j);
                }
            }
            count_second = static_cast<long>(m) * params.rounds;
        }
    }

    report.points.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        PointScore& p = report.points[j];
        p.point_id = static_cast<int>(j) + 1;
        p.sum_first = sum_first[j];
        p.sum_second = sum_second[j];
        p.count_second = count_second;
        if (count_second > 0) {
            p.si = 2.0 * m / (sum_first[j] +
                              m * sum_second[j] / static_cast<double>(count_second));
        } else {
            // m == 1: no second stage; keep the "normal scores near 1" scale.
            p.si = static_cast<double>(m) / sum_first[j];
        }
        switch (params.mode) {
            case ScoreMode::si_desc: p.anomaly = p.si; break;
            case ScoreMode::si_asc: p.anomaly = -p.si; break;
            case ScoreMode::abs_log: p.anomaly = std::fabs(std::log(p.si)); break;
        }
    }

    std::sort(report.points.begin(), report.points.end(),
              [](const PointScore& a, const PointScore& b) {
                  if (a.anomaly != b.anomaly) return a.anomaly > b.anomaly;
                  return a.point_id < b.point_id;
              });
    for (std::size_t r = 0; r < n; ++r)
        report.points[r].rank = static_cast<int>(r) + 1;

    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return report;
}

std::vector<int> rank_outliers(const ScoreReport& report, std::size_t t) {
    if (t < 1 || t > report.points.size())
        throw std::invalid_argument("rank_outliers: t out of range");
    std::vector<int> out;
    out.reserve(t);
    for (std::size_t r = 0; r < t; ++r) out.push_back(report.points[r].point_id);
    return out;
}

void write_score_csv(std::ostream& out, const ScoreReport& report,
                     const std::vector<std::string>& header_comments) {
    for (const auto& c : header_comments) out << "# " << c << "\n";
    out << "point_id,sum_first,sum_second,count_second,si,anomaly,rank\n";
    for (const auto& p : report.points) {
        out << p.point_id << "," << format_double(p.sum_first) << ","
            << format_double(p.sum_second) << "," << p.count_second << ","
            << format_double(p.si) << "," << format_double(p.anomaly) << ","
            << p.rank << "\n";
    }
}

}  // namespace kns
