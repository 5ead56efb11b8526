#ifndef OPCHAOS_ORBIT_HPP
#define OPCHAOS_ORBIT_HPP

#include <functional>
#include <map>

#include "opchaos/atomic_system.hpp"
#include "opchaos/index_set.hpp"

namespace opchaos {

struct SparseVector {
    std::map<index_t, double> entries; // atom -> coefficient

    static SparseVector basis(index_t atom, double coeff = 1.0);
    double norm(const AtomicSystem& system) const;
    SparseVector& add(index_t atom, double coeff);
};

// (T v)(x) = w(x) · v(f(x))
SparseVector apply_operator(const AtomicSystem& system, const SparseVector& v,
                            size_t support_cap = 1u << 20);

struct OrbitSeries {
    index_t n_max = 0;
    std::vector<double> norms;        // ||T^n v||, n = 1..n_max
    std::vector<double> cesaro;       // (1/N) sum of norms[1..N]
    std::vector<size_t> support_size; // per n
};

OrbitSeries orbit_norm_series(const AtomicSystem& system, const SparseVector& v,
                              index_t n_max, size_t support_cap = 1u << 20);

// Declared analytic tail dominating the terms past the scan horizon.
struct TailBound {
    enum class Kind { GeometricRatio, PSeries };
    Kind kind = Kind::GeometricRatio;
    double param = 0.5; // ratio in (0,1), or p-series exponent > 1
};

// Distributionally-irregular vector built from sets A_n:
//   a_n = (mu(A_n)/mu_n(f^{-n}(A_n)))^{1/p},  r_n = sum_{i>=n} a_i,
//   c_n = 1/(sqrt(r_n) mu_n(f^{-n}(A_n))^{1/p}),  y = sum c_n chi_{A_n}.
struct DCVectorPlan {
    SparseVector y;
    index_t horizon = 0;
    std::vector<double> a;                 // per n in 1..horizon (0 off E)
    std::vector<double> r;                 // tail sums, tail bound included
    std::vector<double> partial_norm;      // partial sums of a_n/sqrt(r_n)
    std::vector<double> lower_bound_norms; // 1/sqrt(r_n) on E, else 0
    double bound = 0.0;                    // 2 sqrt(r_1)
    bool certified_tail = false;
};

DCVectorPlan construct_dc_vector(const AtomicSystem& system,
                                 const std::function<AtomSet(index_t)>& family,
                                 const IndexSet& E, index_t horizon,
                                 std::optional<TailBound> tail = std::nullopt);

// phi_k = sum_{n in D, n >= k} (1/w^(n)(b)) chi_{f^n(B')} per atom b of B'.
struct DDCVectorPlan {
    SparseVector phi;
    index_t k = 0;
    double norm = 0.0;
    std::vector<double> coefficient; // 1/v_n for n in 1..horizon (0 off D or n < k)
};

DDCVectorPlan construct_ddc_vector(const AtomicSystem& system, const AtomSet& Bprime,
                                   const IndexSet& D, index_t k, index_t horizon);

struct IrregularityThresholds {
    double eps = 1e-6;
    double M = 1e6;
};

struct IrregularityReport {
    double norm_liminf_stat = 0.0;
    double norm_limsup_stat = 0.0;
    double cesaro_liminf_stat = 0.0;
    double cesaro_limsup_stat = 0.0;
    DensityEstimate small_norm_density; // {n : norm < eps}
    DensityEstimate large_norm_density; // {n : norm > M}
    bool consistent_irregular = false;
    bool consistent_distributionally_irregular = false;
    bool consistent_absolutely_mean_irregular = false;
};

// Finite-horizon statistics only; labels say "consistent with", never "is".
IrregularityReport irregularity_report(const OrbitSeries& series,
                                       IrregularityThresholds thresholds = {});

} // namespace opchaos

#endif
