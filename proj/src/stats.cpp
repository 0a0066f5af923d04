#include "rps/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace rps {

namespace {

struct Ranked {
    Eigen::VectorXd ranks;  // rank of each input position
    double tie_term = 0;    // sum over tie groups of t^3 - t, restricted to nonzero values
};

Ranked rank_magnitudes(const Eigen::Ref<const Eigen::VectorXd>& values) {
    const Eigen::Index n = values.size();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return std::abs(values[a]) < std::abs(values[b]); });

    Ranked out{Eigen::VectorXd(n), 0.0};
    Eigen::Index i = 0;
    while (i < n) {
        Eigen::Index j = i;
        const double mag = std::abs(values[order[i]]);
        while (j + 1 < n && std::abs(values[order[j + 1]]) == mag) ++j;
        const double rank = 0.5 * double(i + j + 2);
        for (Eigen::Index k = i; k <= j; ++k) out.ranks[order[k]] = rank;
        const double t = double(j - i + 1);
        if (mag != 0.0) out.tie_term += t * t * t - t;
        i = j + 1;
    }
    return out;
}

// Exact two-sided p for W+ given the ranks of the nonzero values. Ranks are
// half-integers, so the DP runs over doubled rank sums.
double exact_p(const std::vector<double>& ranks, double w_plus) {
    std::vector<int> doubled;
    doubled.reserve(ranks.size());
    int total = 0;
    for (double r : ranks) {
        doubled.push_back(static_cast<int>(std::lround(2.0 * r)));
        total += doubled.back();
    }
    std::vector<double> ways(static_cast<std::size_t>(total) + 1, 0.0);
    ways[0] = 1.0;
    int reach = 0;
    for (int d : doubled) {
        reach += d;
        for (int s = reach; s >= d; --s) ways[s] += ways[s - d];
    }
    const int observed = static_cast<int>(std::lround(2.0 * w_plus));
    const double all = std::ldexp(1.0, static_cast<int>(ranks.size()));
    double lower = 0, upper = 0;
    for (int s = 0; s <= total; ++s) {
        if (s <= observed) lower += ways[s];
        if (s >= observed) upper += ways[s];
    }
    return std::min(1.0, 2.0 * std::min(lower, upper) / all);
}

}  // namespace

Eigen::VectorXd average_ranks(const Eigen::Ref<const Eigen::VectorXd>& magnitudes) {
    return rank_magnitudes(magnitudes).ranks;
}

double two_tailed_normal_p(double z) {
    return std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
}

TestResult wilcoxon_signed_rank(const Eigen::Ref<const Eigen::VectorXd>& values, WilcoxonMethod method) {
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) throw ArgumentError("non-finite value in Wilcoxon sample");
    }
    const Eigen::Index n_zero = (values.array() == 0.0).count();
    const Eigen::Index n_nonzero = values.size() - n_zero;
    if (n_nonzero == 0) {
        throw DegenerateSample("Wilcoxon signed-rank test needs at least one nonzero value");
    }

    // Pratt ranks the full sample; the other methods rank the nonzero values only.
    Eigen::VectorXd sample(n_nonzero);
    if (method == WilcoxonMethod::kNormalPratt) {
        sample = values;
    } else {
        Eigen::Index k = 0;
        for (Eigen::Index i = 0; i < values.size(); ++i)
            if (values[i] != 0.0) sample[k++] = values[i];
    }
    const Ranked ranked = rank_magnitudes(sample);

    TestResult out;
    out.method = method;
    out.n_effective = n_nonzero;
    std::vector<double> nonzero_ranks;
    for (Eigen::Index i = 0; i < sample.size(); ++i) {
        if (sample[i] > 0) out.w_plus += ranked.ranks[i];
        if (sample[i] != 0) nonzero_ranks.push_back(ranked.ranks[i]);
    }

    const double n = double(sample.size());
    const double n0 = method == WilcoxonMethod::kNormalPratt ? double(n_zero) : 0.0;
    const double mean = (n * (n + 1) - n0 * (n0 + 1)) / 4.0;
    const double var = (n * (n + 1) * (2 * n + 1) - n0 * (n0 + 1) * (2 * n0 + 1)) / 24.0 - ranked.tie_term / 48.0;
    out.z = (out.w_plus - mean) / std::sqrt(var);

    if (method == WilcoxonMethod::kExact) {
        if (n_nonzero > kExactWilcoxonMaxN) {
            throw ArgumentError("exact Wilcoxon limited to " + std::to_string(kExactWilcoxonMaxN) +
                                " nonzero values, got " + std::to_string(n_nonzero));
        }
        out.p_two_tailed = exact_p(nonzero_ranks, out.w_plus);
    } else {
        out.p_two_tailed = two_tailed_normal_p(out.z);
    }
    return out;
}

std::string_view to_string(WilcoxonMethod method) {
    switch (method) {
        case WilcoxonMethod::kNormalPratt: return "pratt";
        case WilcoxonMethod::kNormalDrop: return "drop";
        case WilcoxonMethod::kExact: return "exact";
    }
    return "?";
}

WilcoxonMethod parse_wilcoxon_method(std::string_view name) {
    if (name == "pratt") return WilcoxonMethod::kNormalPratt;
    if (name == "drop") return WilcoxonMethod::kNormalDrop;
    if (name == "exact") return WilcoxonMethod::kExact;
    throw ArgumentError("unknown Wilcoxon method '" + std::string(name) + "' (pratt|drop|exact)");
}

}  // namespace rps
