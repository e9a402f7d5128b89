#include "ordclust/fuzzify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "ordclust/errors.hpp"

namespace ordclust {

FuzzificationTable build_table(const OrdinalView& ds, std::size_t feature) {
    const std::size_t N = ds.observations();
    if (N == 0) throw DataError("no observations");
    if (feature >= ds.features())
        throw std::invalid_argument("build_table: feature index out of range");

    const std::size_t m = ds.scales[feature].size();
    FuzzificationTable t;
    t.sample_size = N;
    t.counts.assign(m, 0);
    for (std::size_t j = 0; j < N; ++j) {
        const int r = ds.rank(j, feature);
        if (r < 1 || r > static_cast<int>(m))
            throw DataError("rank " + std::to_string(r) + " outside scale at observation " +
                            std::to_string(j) + ", feature " + std::to_string(feature));
        ++t.counts[static_cast<std::size_t>(r) - 1];
    }

    t.rel_freq.resize(m);
    for (std::size_t l = 0; l < m; ++l)
        t.rel_freq[l] = static_cast<double>(t.counts[l]) / static_cast<double>(N);

    // c_1 = f_1/2, c_l = c_{l-1} + (f_{l-1} + f_l)/2. Ranks that never occur
    // have f_l = 0 and the recurrence still applies.
    t.avg_freq.resize(m);
    t.avg_freq[0] = 0.5 * t.rel_freq[0];
    for (std::size_t l = 1; l < m; ++l)
        t.avg_freq[l] = t.avg_freq[l - 1] + 0.5 * (t.rel_freq[l - 1] + t.rel_freq[l]);

    return t;
}

std::vector<FuzzificationTable> build_tables(const OrdinalView& ds) {
    std::vector<FuzzificationTable> tables;
    tables.reserve(ds.features());
    for (std::size_t k = 0; k < ds.features(); ++k)
        tables.push_back(build_table(ds, k));
    return tables;
}

Matrix fuzzify_dataset(const OrdinalView& ds,
                       const std::vector<FuzzificationTable>& tables) {
    const std::size_t N = ds.observations();
    const std::size_t n = ds.features();
    if (tables.size() != n)
        throw std::invalid_argument("fuzzify_dataset: one table per feature required");

    Matrix out(N, n);
    for (std::size_t j = 0; j < N; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const int r = ds.rank(j, k);
            if (r < 1 || r > static_cast<int>(tables[k].ranks()))
                throw DataError("rank " + std::to_string(r) +
                                " outside table range at observation " + std::to_string(j) +
                                ", feature " + std::to_string(k));
            out(j, k) = tables[k].avg_freq[static_cast<std::size_t>(r) - 1];
        }
    }
    return out;
}

MembershipFunction::MembershipFunction(double mode) : mode_(mode) {
    if (!(mode > 0.0 && mode < 1.0))
        throw std::invalid_argument("mode out of domain (0,1): " + std::to_string(mode));
}

double MembershipFunction::operator()(double x) const {
    double v;
    if (mode_ > 0.5) {
        v = x <= mode_ ? x / mode_ : (2.0 * mode_ - x) / mode_;
    } else if (mode_ < 0.5) {
        v = x >= mode_ ? (1.0 - x) / (1.0 - mode_) : (x - 2.0 * mode_ + 1.0) / (1.0 - mode_);
    } else {
        v = x <= mode_ ? x / mode_ : (1.0 - x) / (1.0 - mode_);
    }
    return std::clamp(v, 0.0, 1.0);
}

double weighted_mode(std::span<const double> values, std::span<const double> weights) {
    if (values.size() != weights.size())
        throw std::invalid_argument("weighted_mode: size mismatch");
    if (values.empty()) throw std::invalid_argument("weighted_mode: empty input");

    std::map<double, double> weight_by_value;
    double total = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (weights[j] < 0.0)
            throw std::invalid_argument("weighted_mode: negative weight");
        weight_by_value[values[j]] += weights[j];
        total += weights[j];
    }
    if (!(total > 0.0)) throw EngineError("empty cluster");

    // Ascending value order; strict '>' keeps the smaller value on ties.
    double best_value = weight_by_value.begin()->first;
    double best_weight = weight_by_value.begin()->second;
    for (const auto& [value, weight] : weight_by_value) {
        if (weight > best_weight) {
            best_weight = weight;
            best_value = value;
        }
    }
    return best_value;
}

}  // namespace ordclust
