// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kns/dataset.hpp"
#include "kns/detector.hpp"
#include "kns/eval.hpp"
#include "kns/lof.hpp"
#include "kns/section_space.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace kns;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

bool rel_close(double a, double b, double rel) {
    return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

SyntheticDataset table_analog(std::size_t m, std::size_t n, std::uint64_t seed) {
    GeneratorSpec spec;
    spec.m = m;
    spec.n_normal = n - 10;
    spec.n_outliers = 10;
    spec.seed = seed;
    return generate_synthetic(spec);
}

// Ranking under a given score mode, derived from a finished SI report.
std::vector<int> ranking_for_mode(const ScoreReport& base, ScoreMode mode) {
    std::vector<std::pair<double, int>> order;
    for (const auto& p : base.points) {
        double anomaly = 0.0;
        switch (mode) {
            case ScoreMode::abs_log: anomaly = std::fabs(std::log(p.si)); break;
            case ScoreMode::si_asc: anomaly = -p.si; break;
            case ScoreMode::si_desc: anomaly = p.si; break;
        }
        order.emplace_back(anomaly, p.point_id);
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    std::vector<int> out;
    for (const auto& [a, id] : order) out.push_back(id);
    return out;
}

void c1_range_worked_example() {
    const auto ds = kns_test::fig2_dataset();
    const auto ranges = compute_ranges(ds, 5);
    bool ok = ranges.size() == 2;
    ok = ok && close(ranges[0].lo_ext, 4.991, 1e-9);
    ok = ok && close(ranges[0].hi_ext, 23.009, 1e-9);
    ok = ok && close(ranges[0].width, 3.6036, 1e-9);
    ok = ok && close(ranges[1].lo_ext, 5.9905, 1e-9);
    ok = ok && close(ranges[1].hi_ext, 25.0095, 1e-9);
    ok = ok && close(ranges[1].width, 3.8038, 1e-9);
    const auto space = SectionSpace::build(ds, 5);
    for (std::size_t i = 0; i < 2 && ok; ++i) {
        int total = 0;
        for (int g = 1; g <= 5; ++g) total += space.section_count(i, g);
        ok = ok && total == 23;
    }
    report("range extension worked example", ok);
}

void c2_second_projection_oracle() {
    std::mt19937_64 rng(101);
    const int k = 4;
    const int threshold = (3 * k + 1) / 2;
    bool ok = true;
    std::string detail;
    int instances = 0;
    while (instances < 20) {
        std::uniform_int_distribution<int> n_pick(15, 30), m_pick(2, 4),
            scn_pick(3, 6);
        const std::size_t n = n_pick(rng), m = m_pick(rng);
        const int scn = scn_pick(rng);
        const auto ds = kns_test::random_dataset(n, m, rng());
        const auto space = SectionSpace::build(ds, scn);
        ++instances;
        for (std::size_t i = 0; i < m; ++i)
            for (int g = 1; g <= scn; ++g)
                for (std::size_t j = 0; j < m; ++j) {
                    if (j == i) continue;
                    const auto got = second_projection_sdr(space, i, g, j, k);
                    const auto want = kns_test::oracle_second_projection(
                        space, i, g, j, k, threshold);
                    if (got.size() != want.size()) ok = false;
                    for (const auto& [p, v] : got)
                        if (!rel_close(v, want.at(p), 1e-12)) {
                            ok = false;
                            detail = "mismatch at instance " +
                                     std::to_string(instances);
                        }
                }
    }
    report("second projection matches brute-force oracle", ok, detail);
}

void c3_neutral_lattice() {
    const auto ds = kns_test::lattice_dataset(50, 4, 10);
    const auto space = SectionSpace::build(ds, 10);
    bool ok = true;
    for (Strategy strategy : {Strategy::full, Strategy::sampled}) {
        KnsParams params;
        params.k = 4;
        params.scn = 10;
        params.strategy = strategy;
        const auto rep = score(space, params);
        for (const auto& p : rep.points)
            if (p.si != 1.0) ok = false;
    }
    report("uniform lattice scores exactly 1 under both strategies", ok);
}

struct RetrievalStats {
    double med_f_abs_log = 0.0;
    double med_f_si_asc = 0.0;
    double med_prec_full_recall = 0.0;
};

RetrievalStats retrieval_run(std::size_t m, std::size_t n, Strategy strategy) {
    std::vector<double> f_abs, f_asc, prec;
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        const auto synth = table_analog(m, n, seed);
        const auto labels = labels_by_id(synth.data);
        KnsParams params;
        params.strategy = strategy;
        params.seed = seed;
        const auto space =
            SectionSpace::build(synth.data, params.resolve_scn(n));
        const auto rep = score(space, params);
        const auto curve_abs =
            pr_curve(ranking_for_mode(rep, ScoreMode::abs_log), labels);
        const auto curve_asc =
            pr_curve(ranking_for_mode(rep, ScoreMode::si_asc), labels);
        f_abs.push_back(curve_abs.max_f);
        f_asc.push_back(curve_asc.max_f);
        prec.push_back(curve_abs.precision_at_full_recall);
    }
    return {kns_test::median(f_abs), kns_test::median(f_asc),
            kns_test::median(prec)};
}

RetrievalStats stats_m100;  // shared across criteria 4, 5, 7

void c4_inner_outliers_100d() {
    stats_m100 = retrieval_run(100, 500, Strategy::full);
    const bool ok =
        stats_m100.med_f_abs_log >= 0.9 && stats_m100.med_f_si_asc >= 0.9;
    std::ostringstream d;
    d << "median max-F abs_log=" << stats_m100.med_f_abs_log
      << " si_asc=" << stats_m100.med_f_si_asc;
    report("inner outlier retrieval at 100 dims", ok, d.str());
}

void c5_baseline_separation() {
    std::vector<double> lof_prec;
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        const auto synth = table_analog(100, 500, seed);
        const auto labels = labels_by_id(synth.data);
        const auto rep = lof_score(synth.data, {10});
        std::vector<int> ranking;
        for (const auto& p : rep.points) ranking.push_back(p.point_id);
        lof_prec.push_back(pr_curve(ranking, labels).precision_at_full_recall);
    }
    const double lof_med = kns_test::median(lof_prec);
    const bool ok =
        lof_med <= 0.7 && lof_med < stats_m100.med_prec_full_recall;
    std::ostringstream d;
    d << "lof median prec@full-recall=" << lof_med
      << " vs kns=" << stats_m100.med_prec_full_recall;
    report("density baseline trails at full recall", ok, d.str());
}

void c6_sampled_1000d() {
    const auto stats = retrieval_run(1000, 500, Strategy::sampled);
    std::ostringstream d;
    d << "median max-F=" << stats.med_f_abs_log;
    report("sampled strategy holds up at 1000 dims",
           stats.med_f_abs_log >= 0.9, d.str());
}

void c7_low_dimension_regression() {
    const auto stats = retrieval_run(10, 500, Strategy::full);
    std::ostringstream d;
    d << "median max-F m=10: " << stats.med_f_abs_log
      << " vs m=100: " << stats_m100.med_f_abs_log;
    report("retrieval at 10 dims does not exceed 100 dims",
           stats.med_f_abs_log <= stats_m100.med_f_abs_log, d.str());
}

void c8_property_suites() {
    // Sparse-section property: a strictly underpopulated section's density
    // ratio stays below 1.
    bool sparse_ok = true;
    {
        std::mt19937_64 rng(202);
        for (int inst = 0; inst < 100; ++inst) {
            std::uniform_int_distribution<int> n_secs(2, 8), bulk(5, 30);
            const int secs = n_secs(rng);
            std::vector<int> counts(secs);
            counts[0] = 1;
            for (int g = 1; g < secs; ++g) counts[g] = bulk(rng);
            const auto ds =
                kns_test::make_dataset(1, kns_test::column_with_counts(counts));
            const auto space = SectionSpace::build(ds, secs);
            if (space.section_count(0, 1) / space.mean_density(0) >= 1.0)
                sparse_ok = false;
        }
    }

    // Separation property: a point split from a tight cluster by empty
    // sections is no closer to its k-th neighbor than cluster members are
    // to theirs.
    bool separation_ok = true;
    {
        std::mt19937_64 rng(303);
        const int scn = 12;
        for (int inst = 0; inst < 100; ++inst) {
            std::uniform_int_distribution<int> k_pick(2, 5), size_pick(8, 20),
                spread_pick(0, 1);
            const int k = k_pick(rng);
            const int cluster_size = size_pick(rng);
            const int spread = spread_pick(rng);
            std::uniform_int_distribution<int> base_pick(1, scn - spread - 4);
            const int base = base_pick(rng);
            std::uniform_int_distribution<int> out_pick(base + spread + 3, scn);
            const int out_sec = out_pick(rng);

            std::vector<double> values;
            for (int p = 0; p < cluster_size; ++p) {
                values.push_back(0.5);
                values.push_back(base + (spread ? p % 2 : 0) - 0.5);
            }
            values.push_back(0.5);
            values.push_back(out_sec - 0.5);
            // sentinels pinning both raw ranges, outside section 1 of dim 0
            values.push_back(scn - 0.5);
            values.push_back(0.5);
            values.push_back(scn - 0.5);
            values.push_back(scn - 0.5);
            const auto ds = kns_test::make_dataset(2, std::move(values));
            const auto space = SectionSpace::build(ds, scn);

            const std::size_t o = static_cast<std::size_t>(cluster_size);
            const auto members = space.members(0, 1);
            auto kth = [&](std::size_t from) {
                std::vector<std::pair<int, std::size_t>> d;
                for (std::size_t q : members)
                    if (q != from) d.emplace_back(space.dists(1, from, q), q);
                std::sort(d.begin(), d.end());
                return d[static_cast<std::size_t>(k) - 1].second;
            };
            const std::size_t p = kth(o);
            const std::size_t q = kth(p);
            if (space.dists(1, o, p) < space.dists(1, p, q))
                separation_ok = false;
        }
    }
    report("sparse section and cluster separation properties",
           sparse_ok && separation_ok);
}

void c9_sampled_vs_full_consistency() {
    std::vector<double> rhos;
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        const auto synth = table_analog(8, 200, seed);
        KnsParams full;
        full.k = 10;
        const auto space =
            SectionSpace::build(synth.data, full.resolve_scn(200));
        KnsParams sampled = full;
        sampled.strategy = Strategy::sampled;
        sampled.seed = seed;
        const auto a = score(space, full);
        const auto b = score(space, sampled);
        std::vector<int> rank_a(a.points.size()), rank_b(b.points.size());
        for (const auto& p : a.points) rank_a[p.point_id - 1] = p.rank;
        for (const auto& p : b.points) rank_b[p.point_id - 1] = p.rank;
        rhos.push_back(kns_test::spearman(rank_a, rank_b));
    }
    const double med = kns_test::median(rhos);
    std::ostringstream d;
    d << "median spearman=" << med;
    report("sampled and full strategies rank consistently", med >= 0.9,
           d.str());
}

void c10_lof_oracle() {
    bool ok = true;
    for (std::uint64_t seed : {11, 12, 13}) {
        const auto ds = kns_test::random_dataset(30, 3, seed);
        for (int k : {3, 6, 10}) {
            const auto rep = lof_score(ds, {k});
            const auto want = kns_test::oracle_lof(ds, k);
            for (const auto& p : rep.points) {
                const std::size_t j = static_cast<std::size_t>(p.point_id) - 1;
                if (!rel_close(p.lof, want.lof[j], 1e-12)) ok = false;
                if (!rel_close(p.lrd, want.lrd[j], 1e-12)) ok = false;
            }
        }
    }
    report("lof matches quadratic reference", ok);
}

void c11_deterministic_cli() {
    const std::string cli = KNS_CLI_PATH;
    const fs::path dir =
        fs::temp_directory_path() / "kns_acceptance_deterministic";
    fs::create_directories(dir);
    auto shell = [](const std::string& cmd) {
        return std::system((cmd + " >/dev/null 2>&1").c_str());
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };

    const auto data = (dir / "data.csv").string();
    bool ok = shell(cli + " generate --dims 25 --points 200 --outliers 5 "
                          "--seed 17 -o " + data) == 0;
    std::string previous;
    for (int r = 0; r < 3 && ok; ++r) {
        const auto out = (dir / ("run" + std::to_string(r) + ".csv")).string();
        ok = shell(cli + " detect --algo kns --strategy sampled --seed 23 "
                         "--deterministic -i " + data + " -o " + out) == 0;
        const auto text = slurp(out);
        if (r > 0 && text != previous) ok = false;
        previous = text;
    }
    std::error_code ec;
    fs::remove_all(dir, ec);
    report("deterministic runs are byte identical", ok);
}

}  // namespace

int main() {
    c1_range_worked_example();
    c2_second_projection_oracle();
    c3_neutral_lattice();
    c4_inner_outliers_100d();
    c5_baseline_separation();
    c6_sampled_1000d();
    c7_low_dimension_regression();
    c8_property_suites();
    c9_sampled_vs_full_consistency();
    c10_lof_oracle();
    c11_deterministic_cli();

    std::cout << (failures == 0 ? "all criteria passed"
                                : std::to_string(failures) +
                                      " criterion(s) failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
