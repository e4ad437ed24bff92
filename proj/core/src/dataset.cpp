#include "kns/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace kns {

const char* to_string(Label l) {
    switch (l) {
        case Label::normal: return "normal";
        case Label::outlier: return "outlier";
        case Label::noise: return "noise";
    }
    return "?";
}

std::optional<Label> label_from_string(const std::string& s) {
    if (s == "normal") return Label::normal;
    if (s == "outlier") return Label::outlier;
    if (s == "noise") return Label::noise;
    return std::nullopt;
}

Dataset::Dataset(std::size_t m, std::vector<double> values,
                 std::vector<int> point_ids, std::vector<Label> labels)
    : m_(m),
      values_(std::move(values)),
      point_ids_(std::move(point_ids)),
      labels_(std::move(labels)) {
    if (values_.size() != point_ids_.size() * m_)
        throw std::invalid_argument("dataset: values size does not match n*m");
    if (!labels_.empty() && labels_.size() != point_ids_.size())
        throw std::invalid_argument("dataset: labels must cover every point");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("dataset: non-finite value");
    std::unordered_set<int> seen(point_ids_.begin(), point_ids_.end());
    if (seen.size() != point_ids_.size())
        throw std::invalid_argument("dataset: duplicate point ids");
}

void Dataset::append_point(const std::vector<double>& coords, Label label) {
    if (coords.size() != m_)
        throw std::invalid_argument("append_point: wrong arity");
    if (labels_.empty() && !point_ids_.empty())
        throw std::invalid_argument("append_point: dataset has no labels");
    values_.insert(values_.end(), coords.begin(), coords.end());
    int next_id = point_ids_.empty()
                      ? 1
                      : *std::max_element(point_ids_.begin(), point_ids_.end()) + 1;
    point_ids_.push_back(next_id);
    labels_.push_back(label);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    const std::string t = trim(cell);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        throw data_error("csv: cannot parse value '" + t + "' at row " +
                         std::to_string(row) + ", column " + std::to_string(col));
    if (!std::isfinite(v))
        throw data_error("csv: non-finite value at row " + std::to_string(row) +
                         ", column " + std::to_string(col));
    return v;
}

// Shortest round-trip decimal representation.
std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace

Dataset load_csv(std::istream& in, bool has_header,
                 const std::string& label_column) {
    std::string line;
    std::vector<std::string> header;
    bool header_read = false;
    std::size_t label_idx = static_cast<std::size_t>(-1);
    std::size_t arity = 0;
    std::size_t row_no = 0;

    std::vector<double> values;
    std::vector<Label> labels;
    std::size_t n = 0;

    while (std::getline(in, line)) {
        ++row_no;
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_fields(line);
        if (has_header && !header_read) {
            header = fields;
            header_read = true;
            arity = fields.size();
            if (!label_column.empty()) {
                for (std::size_t i = 0; i < header.size(); ++i)
                    if (trim(header[i]) == label_column) label_idx = i;
            }
            continue;
        }
        if (arity == 0) arity = fields.size();
        if (fields.size() != arity)
            throw data_error("csv: ragged row " + std::to_string(row_no) +
                             " has " + std::to_string(fields.size()) +
                             " fields, expected " + std::to_string(arity));
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i == label_idx) {
                auto l = label_from_string(trim(fields[i]));
                if (!l)
                    throw data_error("csv: unknown label '" + trim(fields[i]) +
                                     "' at row " + std::to_string(row_no));
                labels.push_back(*l);
            } else {
                values.push_back(parse_cell(fields[i], row_no, i + 1));
            }
        }
        ++n;
    }
    if (n == 0) throw data_error("csv: no data rows");

    std::size_t m = arity - (label_idx != static_cast<std::size_t>(-1) ? 1 : 0);
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 1);
    return Dataset(m, std::move(values), std::move(ids), std::move(labels));
}

void write_csv(std::ostream& out, const Dataset& ds,
               const std::vector<std::string>& header_comments) {
    for (const auto& c : header_comments) out << "# " << c << "\n";
    for (std::size_t i = 0; i < ds.m(); ++i)
        out << (i ? "," : "") << "p" << (i + 1);
    if (ds.has_labels()) out << ",label";
    out << "\n";
    for (std::size_t j = 0; j < ds.n(); ++j) {
        for (std::size_t i = 0; i < ds.m(); ++i)
            out << (i ? "," : "") << format_double(ds.at(j, i));
        if (ds.has_labels()) out << "," << to_string(ds.label(j));
        out << "\n";
    }
}

void GeneratorSpec::validate() const {
    if (m == 0) throw std::invalid_argument("generator: m must be positive");
    if (n_clusters == 0)
        throw std::invalid_argument("generator: n_clusters must be >= 1");
    if (sigma_range.lo <= 0.0 || sigma_range.hi < sigma_range.lo)
        throw std::invalid_argument("generator: sigma_range must be positive");
    if (mu_range.hi < mu_range.lo)
        throw std::invalid_argument("generator: empty mu_range");
    if (mu_range.lo < outlier_region.lo || mu_range.hi > outlier_region.hi)
        throw std::invalid_argument(
            "generator: mu_range must lie inside outlier_region");
    if (n_noise > 0 && noise_dims >= m)
        throw std::invalid_argument(
            "generator: noise_dims must be smaller than m");
}

SyntheticDataset generate_synthetic(const GeneratorSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> mu_dist(spec.mu_range.lo,
                                                   spec.mu_range.hi);
    std::uniform_real_distribution<double> sigma_dist(spec.sigma_range.lo,
                                                      spec.sigma_range.hi);

    ClusterModel model;
    model.mu.resize(spec.n_clusters);
    model.sigma.resize(spec.n_clusters);
    for (std::size_t c = 0; c < spec.n_clusters; ++c) {
        model.mu[c].resize(spec.m);
        model.sigma[c].resize(spec.m);
        for (std::size_t i = 0; i < spec.m; ++i) {
            model.mu[c][i] = mu_dist(rng);
            model.sigma[c][i] = sigma_dist(rng);
        }
    }

    const std::size_t n = spec.n_normal + spec.n_outliers;
    std::vector<double> values;
    values.reserve(n * spec.m);
    std::vector<Label> labels;
    labels.reserve(n);

    // Cluster sizes differ by at most one.
    const std::size_t base = spec.n_clusters ? spec.n_normal / spec.n_clusters : 0;
    const std::size_t extra = spec.n_normal % spec.n_clusters;
    for (std::size_t c = 0; c < spec.n_clusters; ++c) {
        const std::size_t size = base + (c < extra ? 1 : 0);
        for (std::size_t p = 0; p < size; ++p) {
            for (std::size_t i = 0; i < spec.m; ++i) {
                std::normal_distribution<double> d(model.mu[c][i],
                                                   model.sigma[c][i]);
                values.push_back(d(rng));
            }
            model.cluster_of.push_back(c);
            labels.push_back(Label::normal);
        }
    }

    // Outliers: uniform inside the hull of cluster means per dimension,
    // intersected with the outlier region.
    std::vector<double> hull_lo(spec.m), hull_hi(spec.m);
    for (std::size_t i = 0; i < spec.m; ++i) {
        double lo = model.mu[0][i], hi = model.mu[0][i];
        for (std::size_t c = 1; c < spec.n_clusters; ++c) {
            lo = std::min(lo, model.mu[c][i]);
            hi = std::max(hi, model.mu[c][i]);
        }
        hull_lo[i] = std::max(lo, spec.outlier_region.lo);
        hull_hi[i] = std::min(hi, spec.outlier_region.hi);
        if (hull_hi[i] < hull_lo[i]) hull_hi[i] = hull_lo[i];
    }
    for (std::size_t p = 0; p < spec.n_outliers; ++p) {
        for (std::size_t i = 0; i < spec.m; ++i) {
            std::uniform_real_distribution<double> d(hull_lo[i], hull_hi[i]);
            values.push_back(d(rng));
        }
        labels.push_back(Label::outlier);
    }

    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 1);
    return SyntheticDataset{
        Dataset(spec.m, std::move(values), std::move(ids), std::move(labels)),
        std::move(model)};
}

SyntheticDataset inject_noise_points(const SyntheticDataset& base,
                                     const GeneratorSpec& spec) {
    spec.validate();
    if (spec.n_noise == 0) return base;
    if (base.model.mu.empty())
        throw std::invalid_argument("inject_noise_points: no cluster model");

    SyntheticDataset out = base;
    // Separate stream from the generation RNG so noise does not perturb it.
    std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::size_t> pick_cluster(
        0, base.model.mu.size() - 1);

    std::vector<std::size_t> dims(spec.m);
    std::iota(dims.begin(), dims.end(), 0);

    for (std::size_t p = 0; p < spec.n_noise; ++p) {
        const std::size_t c = pick_cluster(rng);
        std::vector<double> coords(spec.m);
        for (std::size_t i = 0; i < spec.m; ++i) {
            std::normal_distribution<double> d(base.model.mu[c][i],
                                               base.model.sigma[c][i]);
            coords[i] = d(rng);
        }
        std::shuffle(dims.begin(), dims.end(), rng);
        for (std::size_t t = 0; t < spec.noise_dims; ++t) {
            const std::size_t i = dims[t];
            const double sign = (rng() & 1) ? 1.0 : -1.0;
            coords[i] = base.model.mu[c][i] + sign * 4.0 * base.model.sigma[c][i];
        }
        out.data.append_point(coords, Label::noise);
    }
    return out;
}

}  // namespace kns
