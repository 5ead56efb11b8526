#include "opchaos/index_set.hpp"

#include <algorithm>

namespace opchaos {

IndexSet::IndexSet(Descriptor d) : desc_(std::move(d)) {
    if (const auto* ep = std::get_if<EventuallyPeriodic>(&desc_)) {
        if (ep->period.empty()) throw ConfigError("period must be nonempty");
    }
}

IndexSet IndexSet::all() { return IndexSet(EventuallyPeriodic{{}, {true}}); }

IndexSet IndexSet::from_indices(const std::vector<index_t>& members, index_t horizon) {
    ExplicitBitset b;
    b.bits.assign(static_cast<size_t>(horizon), false);
    for (index_t n : members) {
        if (n < 1 || n > horizon) throw ConfigError("member outside horizon");
        b.bits[static_cast<size_t>(n - 1)] = true;
    }
    return IndexSet(std::move(b));
}

bool IndexSet::contains(index_t n) const {
    if (n < 1) return false;
    if (const auto* b = std::get_if<ExplicitBitset>(&desc_)) {
        if (n > static_cast<index_t>(b->bits.size()))
            throw IndexOutOfDomain("membership undecidable past horizon");
        return b->bits[static_cast<size_t>(n - 1)];
    }
    if (const auto* ep = std::get_if<EventuallyPeriodic>(&desc_)) {
        const index_t pre = static_cast<index_t>(ep->preperiod.size());
        if (n <= pre) return ep->preperiod[static_cast<size_t>(n - 1)];
        const index_t L = static_cast<index_t>(ep->period.size());
        return ep->period[static_cast<size_t>((n - pre - 1) % L)];
    }
    const auto& ps = std::get<PredicateSet>(desc_);
    if (n > static_cast<index_t>(ps.series.size()))
        throw IndexOutOfDomain("membership undecidable past horizon");
    const double v = ps.series[static_cast<size_t>(n - 1)];
    return ps.below ? v < ps.threshold : v > ps.threshold;
}

std::optional<index_t> IndexSet::horizon_limit() const {
    if (const auto* b = std::get_if<ExplicitBitset>(&desc_))
        return static_cast<index_t>(b->bits.size());
    if (const auto* ps = std::get_if<PredicateSet>(&desc_))
        return static_cast<index_t>(ps->series.size());
    return std::nullopt;
}

index_t IndexSet::count_upto(index_t n) const {
    index_t c = 0;
    for (index_t k = 1; k <= n; ++k)
        if (contains(k)) ++c;
    return c;
}

DensityEstimate density_estimate(const IndexSet& set, index_t horizon) {
    if (horizon < 2) throw ConfigError("horizon too small");
    if (auto lim = set.horizon_limit()) horizon = std::min(horizon, *lim);

    DensityEstimate est;
    est.horizon = horizon;
    est.lower_stat = 1.0;
    est.upper_stat = 0.0;
    const index_t tail_lo = horizon - horizon / 2;
    index_t count = 0;
    for (index_t n = 1; n <= horizon; ++n) {
        if (set.contains(n)) ++count;
        if (n < tail_lo) continue;
        const double ratio = static_cast<double>(count) / static_cast<double>(n);
        est.lower_stat = std::min(est.lower_stat, ratio);
        est.upper_stat = std::max(est.upper_stat, ratio);
    }

    if (const auto* ep = std::get_if<EventuallyPeriodic>(&set.descriptor())) {
        const double ones =
            static_cast<double>(std::count(ep->period.begin(), ep->period.end(), true));
        const double d = ones / static_cast<double>(ep->period.size());
        est.exact = std::make_pair(d, d);
    }
    return est;
}

} // namespace opchaos
