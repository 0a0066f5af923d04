#pragma once

// One-sample Wilcoxon signed-rank test of a location of 0.

#include <Eigen/Core>

#include <string_view>
#include <vector>

#include "rps/errors.hpp"

namespace rps {

enum class WilcoxonMethod {
    /// Normal approximation; zeros are ranked with the rest, then their ranks discarded.
    kNormalPratt,
    /// Normal approximation; zeros are removed before ranking.
    kNormalDrop,
    /// Exact null distribution of W+ over all 2^n sign assignments, zeros
    /// removed. Limited to 20 nonzero values.
    kExact,
};

inline constexpr Eigen::Index kExactWilcoxonMaxN = 20;

/// Outcome of a two-tailed signed-rank test.
///
/// z is the normal score (W+ - E[W+]) / sd(W+) with the tie correction and no
/// continuity correction. For kExact, z is still reported for reference but
/// p_two_tailed comes from the exact distribution.
struct TestResult {
    double w_plus = 0;
    double z = 0;
    double p_two_tailed = 1;
    Eigen::Index n_effective = 0;
    WilcoxonMethod method = WilcoxonMethod::kNormalPratt;
};

/// Throws DegenerateSample when every value is zero (or the sample is empty),
/// ArgumentError for kExact with more than kExactWilcoxonMaxN nonzero values.
TestResult wilcoxon_signed_rank(const Eigen::Ref<const Eigen::VectorXd>& values,
                                WilcoxonMethod method = WilcoxonMethod::kNormalPratt);

inline TestResult wilcoxon_signed_rank(const std::vector<double>& values,
                                       WilcoxonMethod method = WilcoxonMethod::kNormalPratt) {
    return wilcoxon_signed_rank(
        Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())), method);
}

/// Average ranks (1-based) of `magnitudes`, ties sharing the mean of their positions.
Eigen::VectorXd average_ranks(const Eigen::Ref<const Eigen::VectorXd>& magnitudes);

/// Two-sided tail 2 * (1 - Phi(|z|)).
double two_tailed_normal_p(double z);

std::string_view to_string(WilcoxonMethod method);
WilcoxonMethod parse_wilcoxon_method(std::string_view name);

}  // namespace rps
