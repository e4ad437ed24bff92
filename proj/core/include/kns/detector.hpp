#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kns/section_space.hpp"

namespace kns {

enum class Strategy { full, sampled };
enum class ScoreMode { si_desc, si_asc, abs_log };

const char* to_string(Strategy s);
const char* to_string(ScoreMode m);

struct KnsParams {
    int k = 10;
    int scn = 0;  // 0 = auto: ceil(0.3 * sqrt(n)), at least 2
    Strategy strategy = Strategy::full;
    int rounds = 10;  // permutation rounds, sampled strategy only
    ScoreMode mode = ScoreMode::abs_log;
    std::uint64_t seed = 0;
    long max_projections = 1'000'000;  // cap on m*rounds for sampled runs

    /// Sections with fewer members contribute neutral second-stage values.
    int small_section_threshold() const { return (3 * k + 1) / 2; }

    int resolve_scn(std::size_t n) const;
    void validate() const;
};

struct PointScore {
    int point_id = 0;
    double sum_first = 0.0;
    double sum_second = 0.0;
    long count_second = 0;
    double si = 0.0;
    double anomaly = 0.0;
    int rank = 0;
};

struct ScoreReport {
    KnsParams params;
    std::size_t n = 0;
    std::size_t m = 0;
    double seconds = 0.0;
    std::vector<std::string> warnings;
    std::vector<PointScore> points;  // sorted by rank

    const PointScore& by_id(int point_id) const;
};

/// First-stage section density ratios: (d / d_bar)^2 per non-empty section,
/// shared by all points in the section. Empty sections hold 0.
class FirstProjection {
public:
    explicit FirstProjection(const SectionSpace& space);

    double at(std::size_t dim, int sec) const {
        return sdr_[static_cast<std::size_t>(sec - 1) * m_ + dim];
    }
    double for_point(const SectionSpace& space, std::size_t point,
                     std::size_t dim) const {
        return at(dim, space.section_of(point, dim));
    }

private:
    std::size_t m_;
    std::vector<double> sdr_;  // scn*m
};

/// Tie-inclusive k nearest section neighbors of point p among the members of
/// section (source_dim, sec), measured by section distance in target_dim.
/// Self is excluded. Throws std::invalid_argument when the section holds
/// k + 1 members or fewer.
std::vector<std::size_t> nearest_sections(const SectionSpace& space,
                                          std::size_t source_dim, int sec,
                                          std::size_t target_dim,
                                          std::size_t p, int k);

/// Second-stage section density ratios for every member of section
/// (source_dim, sec) projected into target_dim, as (point, sdr) pairs.
/// Small sections (population below the threshold) yield all-1 values;
/// an empty section yields an empty result.
std::vector<std::pair<std::size_t, double>> second_projection_sdr(
    const SectionSpace& space, std::size_t source_dim, int sec,
    std::size_t target_dim, int k);

/// Run both projection stages and aggregate per-point SI and anomaly values.
ScoreReport score(const SectionSpace& space, const KnsParams& params);

/// The t most anomalous point ids; ties broken by ascending point id.
std::vector<int> rank_outliers(const ScoreReport& report, std::size_t t);

/// Score report CSV: point_id,sum_first,sum_second,count_second,si,anomaly,
/// rank; one row per point, sorted by rank.
void write_score_csv(std::ostream& out, const ScoreReport& report,
                     const std::vector<std::string>& header_comments = {});

}  // namespace kns
