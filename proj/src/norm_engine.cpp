#include "opchaos/norm_engine.hpp"

#include <algorithm>
#include <cmath>

namespace opchaos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

IndexRange default_scan(const WeightSpec& spec, index_t n, index_t step) {
    index_t lo = spec.domain() == Domain::UnilateralN ? 1 : -kDefaultIndexCap;
    index_t hi = kDefaultIndexCap;
    if (auto m = spec.min_index()) lo = std::max(lo, *m);
    if (auto m = spec.max_index()) {
        // windows beyond the table cannot contribute
        hi = std::min(hi, *m);
        lo = std::max(lo, spec.min_index().value_or(lo) - (n - 1) * step);
    }
    return {lo, hi};
}

// sup over scanned start atoms of |w^(n)| with the system's stride
IterateNormResult scan_sup(const AtomicSystem& sys, index_t n, IndexRange r) {
    IterateNormResult out;
    bool found = false;
    for (index_t i = r.lo; i <= r.hi; ++i) {
        double lw;
        try {
            lw = sys.log_weight_n(i, n);
        } catch (const IndexOutOfDomain&) {
            continue;
        }
        const double v = std::exp(lw);
        if (!found || v > out.value) {
            out.value = v;
            out.witness = i;
            found = true;
        }
    }
    return out; // value 0 when no valid window exists
}

// Global sup over all window lengths; only for families where it is provably
// attained within one period-like horizon.
std::optional<double> global_window_sup(const WeightSpec& spec) {
    auto bounded = window_sup_bounded_closed_form(spec);
    if (!bounded || !*bounded) return std::nullopt;
    index_t span = 1;
    if (const auto* per = std::get_if<Periodic>(&spec.generator()))
        span = static_cast<index_t>(per->block.size());
    else if (const auto* pw = std::get_if<PiecewiseBilateral>(&spec.generator())) {
        auto len = [](const HalfGen& h) {
            const auto* p = std::get_if<Periodic>(&h);
            return p ? static_cast<index_t>(p->block.size()) : index_t{1};
        };
        span = 2 * (len(pw->neg) + len(pw->pos)) + 2;
    } else if (std::holds_alternative<BlockEuler>(spec.generator())) {
        return std::exp(1.0);
    }
    double best = 0.0;
    for (index_t n = 1; n <= span; ++n)
        best = std::max(best, sup_window_product(spec, n).value);
    return best;
}

} // namespace

IterateNormResult iterate_norm(const AtomicSystem& system, index_t n,
                               std::optional<IndexRange> scan) {
    if (n < 1) throw ConfigError("n must be positive");
    if (system.is_shift()) {
        const auto& sh = system.shift();
        if (sh.step == 1 && !scan) {
            try {
                auto r = sup_window_product(sh.spec, n);
                return {r.value, r.witness, r.exact};
            } catch (const ExactUnavailable&) {
                // fall through to scan
            }
        }
        IndexRange r = scan ? *scan : default_scan(sh.spec, n, sh.step);
        auto out = scan_sup(system, n, r);
        return out;
    }
    // explicit system
    const auto& ex = system.explicit_structure();
    IterateNormResult out;
    if (system.space().kind == SpaceKind::SupNorm) {
        for (index_t x : ex.atoms) {
            const double v = std::exp(system.log_weight_n(x, n));
            if (v > out.value) {
                out.value = v;
                out.witness = x;
            }
        }
    } else {
        const double p = system.space().p;
        for (index_t y : ex.atoms) {
            const double ratio = mu_n_preimage(system, {y}, n) / system.mass(y);
            const double v = std::pow(ratio, 1.0 / p);
            if (v > out.value) {
                out.value = v;
                out.witness = y;
            }
        }
    }
    out.exact = true; // finite system: the scan is exhaustive
    return out;
}

NormSeries norm_series(const AtomicSystem& system, index_t n_max,
                       std::optional<IndexRange> scan) {
    NormSeries s;
    s.n_max = n_max;
    s.exact = true;
    for (index_t n = 1; n <= n_max; ++n) {
        auto r = iterate_norm(system, n, scan);
        s.values.push_back(r.value);
        s.exact = s.exact && r.exact;
    }
    return s;
}

namespace {

// Closed-form classification of the Cesaro statistic for analytic shifts.
// Returns {exact_bound, divergent}.
std::pair<std::optional<double>, bool> cesaro_closed_form(const WeightSpec& spec,
                                                          double p, bool sup_norm) {
    const auto& gen = spec.generator();
    if (const auto* rp = std::get_if<RatioPower>(&gen)) {
        if (sup_norm) return {std::nullopt, true}; // sup products (n+1)^{1/q}
        const double alpha = p / rp->q;
        if (alpha < 1.0) return {2.0 / (1.0 - alpha), false};
        return {std::nullopt, true}; // harmonic-or-worse divergence
    }
    if (std::holds_alternative<Table>(gen)) return {std::nullopt, false};
    auto bounded = window_sup_bounded_closed_form(spec);
    if (bounded && !*bounded) return {std::nullopt, true}; // geometric growth
    if (auto b = global_window_sup(spec)) return {std::pow(*b, p), false};
    return {std::nullopt, false};
}

} // namespace

double per_index_cesaro(const AtomicSystem& system, double p, index_t i, index_t N) {
    if (!system.is_shift()) throw DomainMismatch("per-index sums need a shift system");
    const auto& sh = system.shift();
    index_t n_hi = N;
    if (sh.spec.domain() == Domain::UnilateralN)
        n_hi = std::min(n_hi, (i - 1) / sh.step);
    Kahan acc;
    double logp = 0.0;
    bool dead = false;
    for (index_t n = 1; n <= n_hi && !dead; ++n) {
        double lw;
        try {
            lw = sh.spec.log_weight(i - n * sh.step);
        } catch (const IndexOutOfDomain&) {
            break;
        }
        if (lw == -kInf) {
            dead = true;
            break;
        }
        logp += lw;
        acc.add(std::exp(p * logp));
    }
    return acc.sum / static_cast<double>(N);
}

CesaroBoundReport np_cesaro(const AtomicSystem& system, double p, index_t horizon_N,
                            std::optional<IndexRange> index_range) {
    CesaroBoundReport rep;
    rep.p = p;
    rep.horizon_N = horizon_N;

    if (system.is_shift()) {
        const auto& sh = system.shift();
        auto [bound, div] = cesaro_closed_form(sh.spec, p, false);
        if (system.space().kind == SpaceKind::SupNorm) {
            auto [bs, ds] = cesaro_closed_form(sh.spec, p, true);
            bound = bs;
            div = ds;
        }
        rep.exact_bound = bound;
        rep.divergence_flag = div;

        if (system.space().kind == SpaceKind::SupNorm) {
            // global formula: (1/N) sum of sup-window products^p
            rep.index_range = index_range.value_or(default_scan(sh.spec, 1, sh.step));
            Kahan acc;
            for (index_t n = 1; n <= horizon_N; ++n) {
                double s;
                try {
                    s = sup_window_product(sh.spec, n).value;
                } catch (const ExactUnavailable&) {
                    s = scan_sup(system, n, rep.index_range).value;
                }
                acc.add(std::pow(s, p));
                const double mean = acc.sum / static_cast<double>(n);
                if (mean > rep.value) {
                    rep.value = mean;
                    rep.witness_N = n;
                }
            }
            return rep;
        }

        IndexRange r = index_range.value_or(default_scan(sh.spec, 1, sh.step));
        rep.index_range = r;
        const bool uni = sh.spec.domain() == Domain::UnilateralN;
        if (sh.step == 1) {
            // cache |w_j|^p over every index the backward sums can touch
            const index_t wlo = r.lo - horizon_N;
            std::vector<double> wp(static_cast<size_t>(r.hi - wlo + 1), 0.0);
            for (index_t j = std::max(wlo, uni ? index_t{1} : wlo); j <= r.hi; ++j) {
                double w;
                try {
                    w = sh.spec.weight(j);
                } catch (const IndexOutOfDomain&) {
                    continue;
                }
                wp[static_cast<size_t>(j - wlo)] = std::pow(w, p);
            }
            for (index_t i = r.lo; i <= r.hi; ++i) {
                const index_t n_hi = uni ? std::min(horizon_N, i - 1) : horizon_N;
                double t = 1.0;
                Kahan acc;
                for (index_t n = 1; n <= n_hi; ++n) {
                    t *= wp[static_cast<size_t>(i - n - wlo)];
                    if (t == 0.0) break;
                    acc.add(t);
                    const double mean = acc.sum / static_cast<double>(n);
                    if (mean > rep.value) {
                        rep.value = mean;
                        rep.witness_index = i;
                        rep.witness_N = n;
                    }
                }
            }
        } else {
            for (index_t i = r.lo; i <= r.hi; ++i) {
                const index_t n_hi = uni ? std::min(horizon_N, (i - 1) / sh.step)
                                         : horizon_N;
                double logp = 0.0;
                Kahan acc;
                for (index_t n = 1; n <= n_hi; ++n) {
                    double lw;
                    try {
                        lw = sh.spec.log_weight(i - n * sh.step);
                    } catch (const IndexOutOfDomain&) {
                        break;
                    }
                    if (lw == -kInf) break;
                    logp += lw;
                    acc.add(std::exp(p * logp));
                    const double mean = acc.sum / static_cast<double>(n);
                    if (mean > rep.value) {
                        rep.value = mean;
                        rep.witness_index = i;
                        rep.witness_N = n;
                    }
                }
            }
        }
        return rep;
    }

    // explicit system: normalized indicators per atom
    if (system.space().kind == SpaceKind::Lp && system.space().p != p)
        throw ConfigError("exponent must match the space for explicit systems");
    const auto& ex = system.explicit_structure();
    for (index_t x : ex.atoms) {
        Kahan acc;
        for (index_t n = 1; n <= horizon_N; ++n) {
            double term;
            if (system.space().kind == SpaceKind::SupNorm) {
                term = std::pow(std::exp(system.log_weight_n(x, n)), p);
            } else {
                term = mu_n_preimage(system, {x}, n) / system.mass(x);
            }
            acc.add(term);
            const double mean = acc.sum / static_cast<double>(n);
            if (mean > rep.value) {
                rep.value = mean;
                rep.witness_index = x;
                rep.witness_N = n;
            }
        }
    }
    return rep;
}

CesaroMeanSeries cesaro_mean_series(const AtomicSystem& system, const SparseVector& y,
                                    index_t n_max) {
    CesaroMeanSeries out;
    SparseVector power = y;   // T^k y
    SparseVector running = y; // sum_{k<=n} T^k y
    SparseVector prev_mean;
    for (index_t n = 1; n <= n_max; ++n) {
        power = apply_operator(system, power);
        for (const auto& [a, c] : power.entries) running.add(a, c);
        SparseVector mean;
        for (const auto& [a, c] : running.entries)
            mean.add(a, c / static_cast<double>(n + 1));
        out.mean_norms.push_back(mean.norm(system));
        if (n > 1) {
            SparseVector diff = mean;
            for (const auto& [a, c] : prev_mean.entries) diff.add(a, -c);
            out.deltas.push_back(diff.norm(system));
        }
        prev_mean = std::move(mean);
    }
    return out;
}

namespace {

// index of the last atom of block m in the concatenated-block family
index_t euler_end(index_t m) { return (m + 1) * (m + 2) / 2 - 3; }

void euler_v_series(double p, index_t N_max, std::vector<double>& V) {
    const index_t M = N_max + 40;
    std::vector<double> emul(static_cast<size_t>(M) + 1, 1.0);
    for (index_t j = 2; j <= M; ++j)
        emul[static_cast<size_t>(j)] = std::exp(p / static_cast<double>(j));
    const double eterm = std::exp(-p);
    for (index_t m = 2; m <= M; ++m) {
        const index_t i = euler_end(m); // window ends at the block's plain run
        const index_t n_hi = std::min(N_max, i - 1);
        index_t blk = m, left = m;
        bool at_term = false, finished = false;
        double t = 1.0;
        Kahan acc;
        for (index_t n = 1; n <= n_hi && !finished; ++n) {
            if (at_term) {
                t *= eterm;
                at_term = false;
                left = blk;
            } else {
                t *= emul[static_cast<size_t>(blk)];
                if (--left == 0) {
                    if (blk == 2)
                        finished = true; // reached the front of the sequence
                    else {
                        --blk;
                        at_term = true;
                    }
                }
            }
            acc.add(t);
            const double mean = acc.sum / static_cast<double>(n);
            auto& slot = V[static_cast<size_t>(n - 1)];
            slot = std::max(slot, mean);
        }
    }
}

} // namespace

FormulaGapReport formula_gap_report(const WeightSpec& spec, double p,
                                    index_t index_cap, index_t N_max) {
    if (spec.domain() != Domain::UnilateralN)
        throw DomainMismatch("the paired formulas require a unilateral weight spec");
    FormulaGapReport rep;
    rep.p = p;
    rep.v_series.assign(static_cast<size_t>(N_max), 0.0);

    // c0-style global formula
    {
        Kahan acc;
        for (index_t n = 1; n <= N_max; ++n) {
            double s;
            try {
                s = sup_window_product(spec, n).value;
            } catch (const ExactUnavailable&) {
                s = sup_window_product(spec, n, IndexRange{1, index_cap}).value;
            }
            acc.add(std::pow(s, p));
            rep.c0_value = std::max(rep.c0_value, acc.sum / static_cast<double>(n));
        }
    }

    // per-index formula
    if (std::holds_alternative<BlockEuler>(spec.generator())) {
        euler_v_series(p, N_max, rep.v_series);
        rep.aligned_series.assign(static_cast<size_t>(N_max), 0.0);
        rep.aligned_series[0] = rep.v_series[0]; // no block of length 1
        for (index_t N = 2; N <= N_max; ++N) {
            const double r = std::exp(p / static_cast<double>(N));
            rep.aligned_series[static_cast<size_t>(N - 1)] =
                r * (std::exp(p) - 1.0) /
                (static_cast<double>(N) * (r - 1.0));
        }
    } else {
        for (index_t i = 2; i <= index_cap; ++i) {
            const index_t n_hi = std::min(N_max, i - 1);
            double logp = 0.0;
            Kahan acc;
            for (index_t n = 1; n <= n_hi; ++n) {
                double lw;
                try {
                    lw = spec.log_weight(i - n);
                } catch (const IndexOutOfDomain&) {
                    break;
                }
                if (std::isinf(lw)) break;
                logp += lw;
                acc.add(std::exp(p * logp));
                auto& slot = rep.v_series[static_cast<size_t>(n - 1)];
                slot = std::max(slot, acc.sum / static_cast<double>(n));
            }
        }
    }
    for (double v : rep.v_series) rep.lp_value = std::max(rep.lp_value, v);
    rep.lp_at_horizon = rep.v_series.back();
    rep.gap = rep.c0_value - rep.lp_value;
    return rep;
}

} // namespace opchaos
