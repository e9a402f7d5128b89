#ifndef ORDCLUST_FUZZIFY_HPP
#define ORDCLUST_FUZZIFY_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "ordclust/matrix.hpp"
#include "ordclust/ordinal.hpp"

namespace ordclust {

// Frequency table for a single feature. For rank l (1-based):
//   counts[l-1]    N_l, occurrences of rank l in the sample;
//   rel_freq[l-1]  f_l = N_l / N;
//   avg_freq[l-1]  c_l, the averaged occurrence frequency:
//                  c_1 = f_1/2, c_l = c_{l-1} + (f_{l-1} + f_l)/2.
// avg_freq is strictly increasing over the ranks that occur, and every
// occurring rank lands in (0,1). Ranks with N_l = 0 still receive a value
// through the recurrence (which can sit at 0 or 1 for leading/trailing
// unobserved ranks); they can never become a cluster mode.
struct FuzzificationTable {
    std::vector<std::size_t> counts;
    std::vector<double> rel_freq;
    std::vector<double> avg_freq;
    std::size_t sample_size = 0;

    std::size_t ranks() const { return counts.size(); }
};

// Builds the frequency table for one feature. Throws DataError("no
// observations") on an empty view.
FuzzificationTable build_table(const OrdinalView& ds, std::size_t feature);

// One table per feature.
std::vector<FuzzificationTable> build_tables(const OrdinalView& ds);

// Replaces every rank by its averaged occurrence frequency. Equal ranks map
// to equal reals and rank order is preserved per feature. Throws DataError
// naming (observation, feature) when a rank falls outside its table.
Matrix fuzzify_dataset(const OrdinalView& ds,
                       const std::vector<FuzzificationTable>& tables);

// Piecewise-linear unimodal membership function anchored at a mode
// x* in (0,1). Two segments meet at the mode, where the value is exactly 1;
// the shape depends on which side of 0.5 the mode falls:
//   x* > 0.5   rises as x/x*, falls as (2x* - x)/x*;
//   x* < 0.5   falls as (1-x)/(1-x*), rises as (x - 2x* + 1)/(1-x*);
//   x* = 0.5   symmetric triangle x/x* then (1-x)/(1-x*).
// Outputs are clamped to [0,1]; the raw formulas can go negative outside
// their natural support. The x* = 0.5 branch is selected by exact floating
// comparison: it is a measure-zero case and the three formulas agree in the
// limit, so near-0.5 modes falling into a neighbouring branch are harmless.
class MembershipFunction {
public:
    // Throws std::invalid_argument("mode out of domain") unless 0 < mode < 1.
    explicit MembershipFunction(double mode);

    double mode() const { return mode_; }

    // Membership of x; intended domain is [0,1].
    double operator()(double x) const;

private:
    double mode_;
};

inline MembershipFunction build_membership_fn(double mode) {
    return MembershipFunction(mode);
}

// The value (drawn from a feature's averaged-frequency set) carrying the
// largest total weight; ties go to the smaller value. Throws
// EngineError("empty cluster") when all weights are zero.
double weighted_mode(std::span<const double> values,
                     std::span<const double> weights);

}  // namespace ordclust

#endif  // ORDCLUST_FUZZIFY_HPP
