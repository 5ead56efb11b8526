#ifndef OPCHAOS_NORM_ENGINE_HPP
#define OPCHAOS_NORM_ENGINE_HPP

#include "opchaos/atomic_system.hpp"
#include "opchaos/orbit.hpp"

namespace opchaos {

inline constexpr index_t kDefaultIndexCap = 100000;
inline constexpr index_t kDefaultHorizonN = 10000;

struct IterateNormResult {
    double value = 0.0;
    index_t witness = 0;
    bool exact = false;
};

// ||T^n||. Lp: sup over atoms x of (mu_n(f^{-n}({x}))/mu({x}))^{1/p};
// SupNorm: sup |w^(n)|. Closed form for analytic shift families, else a scan.
IterateNormResult iterate_norm(const AtomicSystem& system, index_t n,
                               std::optional<IndexRange> scan = std::nullopt);

struct NormSeries {
    index_t n_max = 0;
    std::vector<double> values;
    bool exact = false;
};

NormSeries norm_series(const AtomicSystem& system, index_t n_max,
                       std::optional<IndexRange> scan = std::nullopt);

struct CesaroBoundReport {
    double p = 1.0;
    index_t horizon_N = 0;
    IndexRange index_range{0, 0};
    double value = 0.0; // scanned supremum of the Cesaro sums
    index_t witness_index = 0;
    index_t witness_N = 0;
    std::optional<double> exact_bound; // analytic upper bound when available
    bool divergence_flag = false;      // analytically unbounded
};

// N_p(T) statistic: sup over scanned (i, N) of (1/N) sum_{n=1}^{min{N, i-1}}
// ||T^n e_i||^p (unilateral truncation); bilateral sums are untruncated;
// sup-norm systems use (1/N) sum of the global sup products instead.
CesaroBoundReport np_cesaro(const AtomicSystem& system, double p, index_t horizon_N,
                            std::optional<IndexRange> index_range = std::nullopt);

// single-index Cesaro sum (1/N) sum_{n=1}^{min{N, i-1}} ||T^n e_i||^p
double per_index_cesaro(const AtomicSystem& system, double p, index_t i, index_t N);

struct CesaroMeanSeries {
    std::vector<double> mean_norms; // ||M_n y||, M_n = (1/(n+1)) sum_{k<=n} T^k y
    std::vector<double> deltas;     // ||M_{n+1} - M_n||
};

CesaroMeanSeries cesaro_mean_series(const AtomicSystem& system, const SparseVector& y,
                                    index_t n_max);

struct FormulaGapReport {
    double p = 1.0;
    double c0_value = 0.0;        // sup_N of the global-sup-product formula
    double lp_value = 0.0;        // sup_N V_N of the per-index formula
    double lp_at_horizon = 0.0;   // V_{N_max}
    double gap = 0.0;             // c0_value - lp_value
    std::vector<double> v_series; // V_N, N = 1..N_max
    // means taken over a window confined to one block of length N (closed
    // form (1/N) sum e^{np/N}); filled only for the concatenated-block
    // family.  The full scan in v_series can run slightly higher at finite
    // N because windows may cross block terminators, but both sequences
    // share the same limit.
    std::vector<double> aligned_series;
};

// Compares the per-index Cesaro statistic with the global-sup variant; the two
// can genuinely differ (the concatenated-block family keeps V_N below e^p
// while the global formula tends to e^p).
FormulaGapReport formula_gap_report(const WeightSpec& spec, double p,
                                    index_t index_cap, index_t N_max);

} // namespace opchaos

#endif
