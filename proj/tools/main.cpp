// Command-line front end: generate / detect / eval / bench.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kns/dataset.hpp"
#include "kns/detector.hpp"
#include "kns/eval.hpp"
#include "kns/lof.hpp"
#include "kns/section_space.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitCapacity = 3;

struct RunConfig {
    // generate
    std::size_t dims = 100;
    std::size_t points = 500;
    std::size_t outliers = 10;
    std::size_t clusters = 5;
    std::vector<double> mu_range{20.0, 80.0};
    std::vector<double> sigma_range{10.0, 20.0};
    std::vector<double> outlier_region{20.0, 100.0};
    std::size_t noise_points = 0;
    std::size_t noise_dims = 0;

    // detect
    std::string algo = "kns";
    int k = 10;
    int scn = 0;
    std::string strategy = "auto";
    int rounds = 10;
    std::string mode = "abs_log";
    long max_projections = 1'000'000;
    bool force = false;

    // shared
    std::uint64_t seed = 0;
    bool deterministic = false;
    std::string label_column = "label";
    std::string input;
    std::string output;

    // eval
    std::string scores_path;
    std::string labels_path;
    std::string summary_path;

    // bench
    std::string suite = "table3";
    std::string datasets = "1-7";
    int seeds = 5;
};

kns::GeneratorSpec make_generator_spec(const RunConfig& cfg) {
    kns::GeneratorSpec spec;
    spec.m = cfg.dims;
    if (cfg.points < cfg.outliers)
        throw kns::data_error("generate: outliers exceed total points");
    spec.n_normal = cfg.points - cfg.outliers;
    spec.n_outliers = cfg.outliers;
    spec.n_clusters = cfg.clusters;
    spec.mu_range = {cfg.mu_range[0], cfg.mu_range[1]};
    spec.sigma_range = {cfg.sigma_range[0], cfg.sigma_range[1]};
    spec.outlier_region = {cfg.outlier_region[0], cfg.outlier_region[1]};
    spec.n_noise = cfg.noise_points;
    spec.noise_dims = cfg.noise_dims;
    spec.seed = cfg.seed;
    return spec;
}

std::string format_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw kns::data_error("cannot open output file: " + path);
    return out;
}

kns::Dataset load_dataset(const std::string& path,
                          const std::string& label_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw kns::data_error("cannot open input file: " + path);
    return kns::load_csv(in, true, label_column);
}

int cmd_generate(const RunConfig& cfg) {
    const auto spec = make_generator_spec(cfg);
    auto synth = kns::generate_synthetic(spec);
    if (spec.n_noise > 0) synth = kns::inject_noise_points(synth, spec);

    std::vector<std::string> echo = {
        "command=generate",
        "dims=" + std::to_string(spec.m),
        "points=" + std::to_string(cfg.points),
        "outliers=" + std::to_string(spec.n_outliers),
        "clusters=" + std::to_string(spec.n_clusters),
        "mu_range=" + format_num(spec.mu_range.lo) + ":" + format_num(spec.mu_range.hi),
        "sigma_range=" + format_num(spec.sigma_range.lo) + ":" + format_num(spec.sigma_range.hi),
        "outlier_region=" + format_num(spec.outlier_region.lo) + ":" + format_num(spec.outlier_region.hi),
        "noise_points=" + std::to_string(spec.n_noise),
        "noise_dims=" + std::to_string(spec.noise_dims),
        "seed=" + std::to_string(spec.seed),
    };
    auto out = open_output(cfg.output);
    kns::write_csv(out, synth.data, echo);
    return kExitOk;
}

int cmd_detect(const RunConfig& cfg) {
    const auto ds = load_dataset(cfg.input, cfg.label_column);

    std::string strategy = cfg.strategy;
    if (strategy == "auto") strategy = ds.m() > 200 ? "sampled" : "full";
    if (cfg.algo == "kns" && strategy == "full" && ds.m() > 2000 && !cfg.force)
        throw kns::capacity_error(
            "detect: full strategy on m > 2000 dimensions refused; "
            "use --strategy sampled or pass --force");

    std::vector<std::string> echo = {
        "command=detect",
        "algo=" + cfg.algo,
        "input=" + cfg.input,
        "k=" + std::to_string(cfg.k),
        "seed=" + std::to_string(cfg.seed),
        std::string("deterministic=") + (cfg.deterministic ? "1" : "0"),
    };

    auto out = open_output(cfg.output);
    if (cfg.algo == "kns") {
        kns::KnsParams params;
        params.k = cfg.k;
        params.scn = cfg.scn;
        params.strategy =
            strategy == "full" ? kns::Strategy::full : kns::Strategy::sampled;
        params.rounds = cfg.rounds;
        params.seed = cfg.seed;
        params.max_projections = cfg.max_projections;
        if (cfg.mode == "si_desc") params.mode = kns::ScoreMode::si_desc;
        else if (cfg.mode == "si_asc") params.mode = kns::ScoreMode::si_asc;
        else if (cfg.mode == "abs_log") params.mode = kns::ScoreMode::abs_log;
        else throw CLI::ValidationError("--mode", "unknown score mode " + cfg.mode);
        const int scn = params.resolve_scn(ds.n());

        auto space = kns::SectionSpace::build(ds, scn, &std::cerr);
        auto report = kns::score(space, params);
        for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";

        echo.push_back("scn=" + std::to_string(scn));
        echo.push_back("strategy=" + std::string(kns::to_string(params.strategy)));
        echo.push_back("rounds=" + std::to_string(params.rounds));
        echo.push_back("mode=" + std::string(kns::to_string(params.mode)));
        echo.push_back("seconds=" +
                       (cfg.deterministic ? "0" : format_num(report.seconds)));
        kns::write_score_csv(out, report, echo);
    } else if (cfg.algo == "lof") {
        kns::LofParams params;
        params.k_nn = cfg.k;
        auto report = kns::lof_score(ds, params);
        echo.push_back("seconds=" +
                       (cfg.deterministic ? "0" : format_num(report.seconds)));
        kns::write_lof_csv(out, report, echo);
    } else {
        throw CLI::ValidationError("--algo", "unknown detector " + cfg.algo);
    }
    return kExitOk;
}

// Ranking and metadata pulled back out of a score-report CSV.
struct LoadedScores {
    std::vector<int> ranking;
    std::string method = "method";
    double seconds = 0.0;
};

LoadedScores load_scores(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw kns::data_error("cannot open scores file: " + path);
    LoadedScores out;
    std::string line;
    int id_col = -1, rank_col = -1;
    std::vector<std::pair<int, int>> rank_id;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto eq = line.find('=');
            if (eq != std::string::npos) {
                auto key = line.substr(1, eq - 1);
                key.erase(0, key.find_first_not_of(' '));
                auto value = line.substr(eq + 1);
                if (key == "algo") out.method = value;
                if (key == "seconds") out.seconds = std::strtod(value.c_str(), nullptr);
            }
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (id_col < 0) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (fields[i] == "point_id") id_col = static_cast<int>(i);
                if (fields[i] == "rank") rank_col = static_cast<int>(i);
            }
            if (id_col < 0 || rank_col < 0)
                throw kns::data_error(
                    "scores file lacks point_id/rank columns: " + path);
            continue;
        }
        rank_id.emplace_back(std::stoi(fields[rank_col]),
                             std::stoi(fields[id_col]));
    }
    std::sort(rank_id.begin(), rank_id.end());
    for (const auto& [rank, id] : rank_id) out.ranking.push_back(id);
    if (out.ranking.empty()) throw kns::data_error("empty scores file: " + path);
    return out;
}

int cmd_eval(const RunConfig& cfg) {
    const auto scores = load_scores(cfg.scores_path);
    const auto labels = kns::labels_by_id(load_dataset(cfg.labels_path, cfg.label_column));
    const auto curve = kns::pr_curve(scores.ranking, labels);
    const auto summary =
        kns::compare({{scores.method, scores.ranking, scores.seconds}}, labels);

    std::vector<std::string> echo = {
        "command=eval",
        "scores=" + cfg.scores_path,
        "labels=" + cfg.labels_path,
    };
    auto out = open_output(cfg.output);
    kns::write_pr_csv(out, scores.method, curve, echo);

    std::string summary_path = cfg.summary_path;
    if (summary_path.empty()) {
        summary_path = cfg.output;
        auto dot = summary_path.rfind(".csv");
        if (dot != std::string::npos && dot == summary_path.size() - 4)
            summary_path.insert(dot, ".summary");
        else
            summary_path += ".summary.csv";
    }
    auto sout = open_output(summary_path);
    kns::write_summary_csv(sout, summary, echo);
    return kExitOk;
}

std::vector<int> parse_dataset_selection(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto dash = part.find('-');
        if (dash == std::string::npos) {
            out.push_back(std::stoi(part));
        } else {
            int lo = std::stoi(part.substr(0, dash));
            int hi = std::stoi(part.substr(dash + 1));
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        }
    }
    return out;
}

int cmd_bench(const RunConfig& cfg) {
    if (cfg.suite != "table3")
        throw CLI::ValidationError("--suite", "unknown suite " + cfg.suite);
    // Dataset shapes 1..8: (dimensions, points), 10 planted outliers each.
    static const std::map<int, std::pair<std::size_t, std::size_t>> shapes = {
        {1, {10, 500}},    {2, {100, 500}},  {3, {100, 1000}},
        {4, {500, 500}},   {5, {500, 1000}}, {6, {1000, 500}},
        {7, {1000, 1000}}, {8, {10000, 1000}},
    };

    const auto selection = parse_dataset_selection(cfg.datasets);
    for (int no : selection)
        if (!shapes.count(no))
            throw kns::data_error("bench: unknown dataset number " +
                                  std::to_string(no));

    fs::create_directories(cfg.output);
    std::vector<std::string> echo = {
        "command=bench",
        "suite=" + cfg.suite,
        "datasets=" + cfg.datasets,
        "seeds=" + std::to_string(cfg.seeds),
        "seed=" + std::to_string(cfg.seed),
    };
    auto summary_out = open_output((fs::path(cfg.output) / "summary.csv").string());
    for (const auto& c : echo) summary_out << "# " << c << "\n";
    summary_out << "dataset,m,n,seed,method,k,max_f,precision_at_full_recall,seconds\n";
    auto pr_out = open_output((fs::path(cfg.output) / "pr_curves.csv").string());
    pr_out << "dataset,seed,method,recall_level,cutoff,precision,f_measure\n";

    struct BestRow { double kns_med = 0, lof_med = 0; std::size_t m = 0, n = 0; };
    std::map<int, BestRow> best;

    for (int no : selection) {
        const auto [m, n] = shapes.at(no);
        std::vector<double> kns_f, lof_f;
        for (int s = 0; s < cfg.seeds; ++s) {
            const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(s);
            kns::GeneratorSpec spec;
            spec.m = m;
            spec.n_normal = n - 10;
            spec.n_outliers = 10;
            spec.seed = seed;
            const auto synth = kns::generate_synthetic(spec);
            const auto labels = kns::labels_by_id(synth.data);

            kns::KnsParams kp;
            kp.strategy = m > 200 ? kns::Strategy::sampled : kns::Strategy::full;
            kp.seed = seed;
            auto space = kns::SectionSpace::build(synth.data, kp.resolve_scn(n));
            const auto kreport = kns::score(space, kp);
            const auto kranking = kns::rank_outliers(kreport, n);
            const auto kcurve = kns::pr_curve(kranking, labels);
            const double kns_seconds = cfg.deterministic ? 0.0 : kreport.seconds;
            summary_out << no << "," << m << "," << n << "," << seed << ",kns,"
                        << kp.k << "," << kcurve.max_f << ","
                        << kcurve.precision_at_full_recall << "," << kns_seconds
                        << "\n";
            for (const auto& l : kcurve.levels)
                pr_out << no << "," << seed << ",kns," << l.recall << ","
                       << l.cutoff << "," << l.precision << "," << l.f_measure
                       << "\n";
            kns_f.push_back(kcurve.max_f);

            // LOF's exact k is swept and the best result kept.
            double best_f = -1.0, best_prec = 0.0, best_secs = 0.0;
            int best_k = 0;
            kns::PrCurve best_curve;
            for (int k : {8, 10, 12}) {
                const auto lreport = kns::lof_score(synth.data, {k});
                std::vector<int> lranking;
                for (const auto& p : lreport.points) lranking.push_back(p.point_id);
                const auto lcurve = kns::pr_curve(lranking, labels);
                if (lcurve.max_f > best_f) {
                    best_f = lcurve.max_f;
                    best_prec = lcurve.precision_at_full_recall;
                    best_secs = cfg.deterministic ? 0.0 : lreport.seconds;
                    best_k = k;
                    best_curve = lcurve;
                }
            }
            summary_out << no << "," << m << "," << n << "," << seed << ",lof,"
                        << best_k << "," << best_f << "," << best_prec << ","
                        << best_secs << "\n";
            for (const auto& l : best_curve.levels)
                pr_out << no << "," << seed << ",lof," << l.recall << ","
                       << l.cutoff << "," << l.precision << "," << l.f_measure
                       << "\n";
            lof_f.push_back(best_f);
        }
        auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            const std::size_t h = v.size() / 2;
            return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
        };
        best[no] = {median(kns_f), median(lof_f), m, n};
    }

    auto best_out = open_output((fs::path(cfg.output) / "best_f.csv").string());
    for (const auto& c : echo) best_out << "# " << c << "\n";
    best_out << "dataset,m,n,method,median_max_f\n";
    for (const auto& [no, row] : best) {
        best_out << no << "," << row.m << "," << row.n << ",kns," << row.kns_med
                 << "\n";
        best_out << no << "," << row.m << "," << row.n << ",lof," << row.lof_med
                 << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-NS subspace outlier detector and benchmark harness"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config");
    app.require_subcommand(1);

    RunConfig cfg;

    auto* gen = app.add_subcommand("generate", "Write a synthetic labeled dataset");
    gen->add_option("--dims", cfg.dims, "Dimension count");
    gen->add_option("--points", cfg.points, "Total point count (incl. outliers)");
    gen->add_option("--outliers", cfg.outliers, "Planted outlier count");
    gen->add_option("--clusters", cfg.clusters, "Normal cluster count");
    gen->add_option("--mu-range", cfg.mu_range, "Cluster mean range lo hi")
        ->expected(2);
    gen->add_option("--sigma-range", cfg.sigma_range, "Cluster stddev range lo hi")
        ->expected(2);
    gen->add_option("--outlier-region", cfg.outlier_region,
                    "Outlier placement region lo hi")
        ->expected(2);
    gen->add_option("--noise-points", cfg.noise_points, "Noise point count");
    gen->add_option("--noise-dims", cfg.noise_dims,
                    "Dimensions corrupted per noise point");
    gen->add_option("--seed", cfg.seed, "RNG seed");
    gen->add_option("-o,--output", cfg.output, "Output CSV path")->required();

    auto* det = app.add_subcommand("detect", "Score a dataset for outliers");
    det->add_option("--algo", cfg.algo, "Detector: kns or lof")
        ->check(CLI::IsMember({"kns", "lof"}));
    det->add_option("--k", cfg.k, "Neighbor count");
    det->add_option("--scn", cfg.scn, "Sections per dimension (0 = auto)");
    det->add_option("--strategy", cfg.strategy,
                    "Projection strategy: full, sampled or auto")
        ->check(CLI::IsMember({"full", "sampled", "auto"}));
    det->add_option("--rounds", cfg.rounds, "Sampling rounds (sampled strategy)");
    det->add_option("--mode", cfg.mode, "Score mode: abs_log, si_asc, si_desc")
        ->check(CLI::IsMember({"abs_log", "si_asc", "si_desc"}));
    det->add_option("--max-projections", cfg.max_projections,
                    "Cap on m*rounds for the sampled strategy");
    det->add_option("--seed", cfg.seed, "RNG seed (sampled strategy)");
    det->add_flag("--force", cfg.force, "Allow full strategy beyond m = 2000");
    det->add_flag("--deterministic", cfg.deterministic,
                  "Byte-reproducible outputs (timings zeroed)");
    det->add_option("--label-column", cfg.label_column, "Label column name");
    det->add_option("-i,--input", cfg.input, "Input dataset CSV")->required();
    det->add_option("-o,--output", cfg.output, "Output score CSV")->required();

    auto* ev = app.add_subcommand("eval", "Evaluate a score report against labels");
    ev->add_option("--scores", cfg.scores_path, "Score report CSV")->required();
    ev->add_option("--labels", cfg.labels_path, "Labeled dataset CSV")->required();
    ev->add_option("--label-column", cfg.label_column, "Label column name");
    ev->add_option("--summary", cfg.summary_path,
                   "Summary CSV path (default: <output>.summary.csv)");
    ev->add_option("-o,--output", cfg.output, "Per-level PR CSV path")->required();

    auto* bench = app.add_subcommand(
        "bench", "Regenerate benchmark datasets and compare detectors");
    bench->add_option("--suite", cfg.suite, "Benchmark suite name");
    bench->add_option("--datasets", cfg.datasets,
                      "Dataset numbers, e.g. 2 or 1-3,6");
    bench->add_option("--seeds", cfg.seeds, "Seeds per dataset");
    bench->add_option("--seed", cfg.seed, "Base RNG seed");
    bench->add_flag("--deterministic", cfg.deterministic,
                    "Byte-reproducible outputs (timings zeroed)");
    bench->add_option("-o,--output", cfg.output, "Output directory")->required();

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_generate(cfg);
        if (det->parsed()) return cmd_detect(cfg);
        if (ev->parsed()) return cmd_eval(cfg);
        if (bench->parsed()) return cmd_bench(cfg);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return kExitOk;  // --help / --version
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const kns::capacity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
