#ifndef OPCHAOS_INDEX_SET_HPP
#define OPCHAOS_INDEX_SET_HPP

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "opchaos/weight_spec.hpp"

namespace opchaos {

// Subsets of {1, 2, 3, ...} with decidable membership up to a horizon.

struct ExplicitBitset {
    std::vector<bool> bits; // bits[n-1] <=> n in the set
};

// preperiod bits, then period bits repeated forever. Densities are exact.
struct EventuallyPeriodic {
    std::vector<bool> preperiod;
    std::vector<bool> period; // nonempty
};

// n in the set iff series[n-1] > threshold (or < when below = true).
struct PredicateSet {
    std::vector<double> series;
    double threshold = 0.0;
    bool below = false;
};

class IndexSet {
  public:
    using Descriptor = std::variant<ExplicitBitset, EventuallyPeriodic, PredicateSet>;

    explicit IndexSet(Descriptor d);

    static IndexSet all();                         // full set of naturals
    static IndexSet from_indices(const std::vector<index_t>& members,
                                 index_t horizon); // finite description

    bool contains(index_t n) const; // n >= 1
    // largest n with decidable membership; nullopt = unbounded
    std::optional<index_t> horizon_limit() const;
    const Descriptor& descriptor() const { return desc_; }

    index_t count_upto(index_t n) const; // card(set ∩ [1, n])

  private:
    Descriptor desc_;
};

struct DensityEstimate {
    index_t horizon = 0;
    double lower_stat = 0.0;
    double upper_stat = 0.0;
    // exact (lower density, upper density); eventually periodic sets only
    std::optional<std::pair<double, double>> exact;
};

// lower_stat/upper_stat = min/max of card(D ∩ [1,n])/n over the tail half
// of the horizon.
DensityEstimate density_estimate(const IndexSet& set, index_t horizon);

} // namespace opchaos

#endif
