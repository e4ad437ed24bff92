#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kns/errors.hpp"

namespace kns {

enum class Label { normal, outlier, noise };

const char* to_string(Label l);
std::optional<Label> label_from_string(const std::string& s);

/// Rectangular n x m matrix of finite reals with stable point ids and
/// optional per-point ground-truth labels.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::size_t m, std::vector<double> values, std::vector<int> point_ids,
            std::vector<Label> labels = {});

    std::size_t n() const { return point_ids_.size(); }
    std::size_t m() const { return m_; }

    double at(std::size_t point, std::size_t dim) const {
        return values_[point * m_ + dim];
    }
    double& at(std::size_t point, std::size_t dim) {
        return values_[point * m_ + dim];
    }

    int point_id(std::size_t point) const { return point_ids_[point]; }
    const std::vector<int>& point_ids() const { return point_ids_; }

    bool has_labels() const { return !labels_.empty(); }
    Label label(std::size_t point) const { return labels_[point]; }
    const std::vector<Label>& labels() const { return labels_; }

    void append_point(const std::vector<double>& coords, Label label);

private:
    std::size_t m_ = 0;
    std::vector<double> values_;  // row-major, n*m
    std::vector<int> point_ids_;
    std::vector<Label> labels_;  // empty or one per point
};

/// Parse a CSV stream into a Dataset. Lines starting with '#' are ignored.
/// If label_column names a header column, that column is read as labels and
/// excluded from the numeric matrix.
Dataset load_csv(std::istream& in, bool has_header = true,
                 const std::string& label_column = "label");

/// Write a Dataset as CSV with header p1..pm[,label]. Each string in
/// header_comments is emitted first as a '#'-prefixed line.
void write_csv(std::ostream& out, const Dataset& ds,
               const std::vector<std::string>& header_comments = {});

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct GeneratorSpec {
    std::size_t m = 0;
    std::size_t n_normal = 0;
    std::size_t n_outliers = 0;
    std::size_t n_clusters = 5;
    Interval mu_range{20.0, 80.0};
    Interval sigma_range{10.0, 20.0};
    Interval outlier_region{20.0, 100.0};
    std::size_t n_noise = 0;
    std::size_t noise_dims = 0;
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument
};

/// Per-cluster Gaussian parameters recorded at generation time, needed for
/// noise injection and for checking marginals in tests.
struct ClusterModel {
    std::vector<std::vector<double>> mu;     // [cluster][dim]
    std::vector<std::vector<double>> sigma;  // [cluster][dim]
    std::vector<std::size_t> cluster_of;     // cluster index per normal point
};

struct SyntheticDataset {
    Dataset data;
    ClusterModel model;
};

/// Gaussian clusters plus uniformly placed outliers confined to the hull of
/// the cluster means in every dimension. Deterministic for a fixed seed.
SyntheticDataset generate_synthetic(const GeneratorSpec& spec);

/// Append n_noise points drawn from the cluster model, each pushed to
/// mu +/- 4 sigma in noise_dims randomly chosen dimensions.
SyntheticDataset inject_noise_points(const SyntheticDataset& base,
                                     const GeneratorSpec& spec);

}  // namespace kns
