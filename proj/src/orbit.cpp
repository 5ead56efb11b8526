#include "opchaos/orbit.hpp"

#include <algorithm>
#include <cmath>

namespace opchaos {

SparseVector SparseVector::basis(index_t atom, double coeff) {
    SparseVector v;
    v.entries[atom] = coeff;
    return v;
}

SparseVector& SparseVector::add(index_t atom, double coeff) {
    if (coeff != 0.0) entries[atom] += coeff;
    return *this;
}

double SparseVector::norm(const AtomicSystem& system) const {
    if (system.space().kind == SpaceKind::SupNorm) {
        double m = 0.0;
        for (const auto& [a, c] : entries) m = std::max(m, std::fabs(c));
        return m;
    }
    const double p = system.space().p;
    double acc = 0.0, comp = 0.0; // Kahan
    for (const auto& [a, c] : entries) {
        const double term = system.mass(a) * std::pow(std::fabs(c), p);
        const double y = term - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return std::pow(acc, 1.0 / p);
}

SparseVector apply_operator(const AtomicSystem& system, const SparseVector& v,
                            size_t support_cap) {
    SparseVector out;
    for (const auto& [atom, coeff] : v.entries) {
        if (coeff == 0.0) continue;
        for (index_t x : system.preimage(atom)) {
            double w;
            try {
                w = std::exp(system.log_weight(x));
            } catch (const IndexOutOfDomain&) {
                continue;
            }
            if (w != 0.0) out.entries[x] += w * coeff;
        }
        if (out.entries.size() > support_cap)
            throw SupportExplosion("orbit support exceeded cap");
    }
    return out;
}

OrbitSeries orbit_norm_series(const AtomicSystem& system, const SparseVector& v,
                              index_t n_max, size_t support_cap) {
    OrbitSeries s;
    s.n_max = n_max;
    s.norms.reserve(static_cast<size_t>(n_max));
    SparseVector cur = v;
    double acc = 0.0, comp = 0.0;
    for (index_t n = 1; n <= n_max; ++n) {
        cur = apply_operator(system, cur, support_cap);
        const double nm = cur.norm(system);
        s.norms.push_back(nm);
        s.support_size.push_back(cur.entries.size());
        const double y = nm - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
        s.cesaro.push_back(acc / static_cast<double>(n));
    }
    return s;
}

namespace {

double mu_of_set(const AtomicSystem& sys, const AtomSet& B) {
    double m = 0.0;
    for (index_t a : B) m += sys.mass(a);
    return m;
}

// Checks the declared tail bound dominates the observed terms and returns the
// analytic tail sum past `terms.back()`.
double verified_tail_sum(const std::vector<std::pair<index_t, double>>& terms,
                         const TailBound& tail, index_t horizon) {
    if (terms.empty()) return 0.0;
    if (tail.kind == TailBound::Kind::GeometricRatio) {
        const double rho = tail.param;
        if (rho <= 0.0 || rho >= 1.0) throw ConfigError("geometric ratio outside (0,1)");
        for (size_t j = 1; j < terms.size(); ++j) {
            const double gap = static_cast<double>(terms[j].first - terms[j - 1].first);
            if (terms[j].second > terms[j - 1].second * std::pow(rho, gap) * (1 + 1e-9))
                throw DivergentASeries("terms violate the declared geometric bound");
        }
        const auto [n_last, a_last] = terms.back();
        // sum_{m >= 1} a_last rho^m over indices past the horizon
        const double skip = static_cast<double>(horizon - n_last);
        return a_last * std::pow(rho, skip) * rho / (1.0 - rho);
    }
    const double e = tail.param;
    if (e <= 1.0) throw ConfigError("p-series exponent must exceed 1");
    double scale = 0.0;
    for (const auto& [n, a] : terms) {
        if (a > scale * std::pow(static_cast<double>(n), -e)) {
            scale = a * std::pow(static_cast<double>(n), e);
        }
    }
    // integral bound: sum_{n > H} scale n^{-e} <= scale H^{1-e}/(e-1)
    return scale * std::pow(static_cast<double>(horizon), 1.0 - e) / (e - 1.0);
}

} // namespace

DCVectorPlan construct_dc_vector(const AtomicSystem& system,
                                 const std::function<AtomSet(index_t)>& family,
                                 const IndexSet& E, index_t horizon,
                                 std::optional<TailBound> tail) {
    if (system.space().kind != SpaceKind::Lp)
        throw SupNormMismatch("construction is stated for Lp systems");
    const double p = system.space().p;

    DCVectorPlan plan;
    plan.horizon = horizon;
    plan.a.assign(static_cast<size_t>(horizon) + 1, 0.0);
    std::vector<double> mun(static_cast<size_t>(horizon) + 1, 0.0);
    std::vector<AtomSet> sets(static_cast<size_t>(horizon) + 1);
    std::vector<std::pair<index_t, double>> terms;
    double a_max = 0.0;
    for (index_t n = 1; n <= horizon; ++n) {
        if (!E.contains(n)) continue;
        AtomSet A = family(n);
        if (A.empty()) throw EmptyFamily("A_n empty");
        const double m = mu_n_preimage(system, A, n);
        if (m <= 0.0) throw NonpositiveWeight("mu_n vanishes on A_n");
        const double a = std::pow(mu_of_set(system, A) / m, 1.0 / p);
        plan.a[static_cast<size_t>(n)] = a;
        mun[static_cast<size_t>(n)] = m;
        sets[static_cast<size_t>(n)] = std::move(A);
        terms.emplace_back(n, a);
        a_max = std::max(a_max, a);
    }
    if (terms.empty()) throw EmptyFamily("no indices of E within horizon");

    double tail_sum = 0.0;
    if (tail) {
        tail_sum = verified_tail_sum(terms, *tail, horizon);
        plan.certified_tail = true;
    } else if (terms.back().second > 1e-8 * a_max) {
        throw DivergentASeries("series shows no decay and no tail bound was declared");
    }

    // suffix sums r_n (include the certified tail), then coefficients
    plan.r.assign(static_cast<size_t>(horizon) + 1, 0.0);
    double suffix = tail_sum;
    for (index_t n = horizon; n >= 1; --n) {
        suffix += plan.a[static_cast<size_t>(n)];
        plan.r[static_cast<size_t>(n)] = suffix;
    }
    plan.bound = 2.0 * std::sqrt(plan.r[1]);

    plan.partial_norm.assign(static_cast<size_t>(horizon) + 1, 0.0);
    plan.lower_bound_norms.assign(static_cast<size_t>(horizon) + 1, 0.0);
    double acc = 0.0, comp = 0.0;
    for (index_t n = 1; n <= horizon; ++n) {
        const size_t k = static_cast<size_t>(n);
        if (plan.a[k] > 0.0) {
            const double rn = plan.r[k];
            const double cn = 1.0 / (std::sqrt(rn) * std::pow(mun[k], 1.0 / p));
            for (index_t atom : sets[k]) plan.y.add(atom, cn);
            const double term = plan.a[k] / std::sqrt(rn);
            const double y = term - comp;
            const double t = acc + y;
            comp = (t - acc) - y;
            acc = t;
            plan.lower_bound_norms[k] = 1.0 / std::sqrt(rn);
        }
        plan.partial_norm[k] = acc;
        if (acc > plan.bound * (1.0 + 1e-12))
            throw DivergentASeries("partial norm exceeded the proof bound");
    }
    return plan;
}

DDCVectorPlan construct_ddc_vector(const AtomicSystem& system, const AtomSet& Bprime,
                                   const IndexSet& D, index_t k, index_t horizon) {
    if (Bprime.empty()) throw EmptyFamily("B' empty");
    if (!system.is_shift()) {
        // injectivity: no atom may have two preimages
        const auto& ex = system.explicit_structure();
        for (index_t a : ex.atoms)
            if (system.preimage(a).size() > 1)
                throw NonInjectiveMap("map is not injective");
    }
    DDCVectorPlan plan;
    plan.k = k;
    plan.coefficient.assign(static_cast<size_t>(horizon) + 1, 0.0);
    double max_c = 0.0, last_c = 0.0;
    for (index_t n = k; n <= horizon; ++n) {
        if (!D.contains(n)) continue;
        double coeff_sum = 0.0;
        for (index_t b : Bprime) {
            const double lwn = system.log_weight_n(b, n);
            if (!std::isfinite(lwn)) throw NonpositiveWeight("zero weight along orbit");
            const double c = std::exp(-lwn);
            plan.phi.add(system.map_n(b, n), c);
            coeff_sum = std::max(coeff_sum, c);
        }
        plan.coefficient[static_cast<size_t>(n)] = coeff_sum;
        max_c = std::max(max_c, coeff_sum);
        last_c = coeff_sum;
    }
    if (max_c == 0.0) throw EmptyFamily("no indices of D in [k, horizon]");
    if (last_c > 1e-8 * max_c)
        throw DivergentSum("coefficient series shows no decay at the horizon");
    plan.norm = plan.phi.norm(system);
    return plan;
}

IrregularityReport irregularity_report(const OrbitSeries& series,
                                       IrregularityThresholds th) {
    IrregularityReport rep;
    const index_t H = series.n_max;
    if (H < 2) throw ConfigError("series too short");
    const index_t tail_lo = H - H / 2;
    double nmin = std::numeric_limits<double>::infinity(), nmax = 0.0;
    double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
    for (index_t n = tail_lo; n <= H; ++n) {
        const double v = series.norms[static_cast<size_t>(n - 1)];
        const double c = series.cesaro[static_cast<size_t>(n - 1)];
        nmin = std::min(nmin, v);
        nmax = std::max(nmax, v);
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
    }
    rep.norm_liminf_stat = nmin;
    rep.norm_limsup_stat = nmax;
    rep.cesaro_liminf_stat = cmin;
    rep.cesaro_limsup_stat = cmax;

    IndexSet small(PredicateSet{series.norms, th.eps, /*below=*/true});
    IndexSet large(PredicateSet{series.norms, th.M, /*below=*/false});
    rep.small_norm_density = density_estimate(small, H);
    rep.large_norm_density = density_estimate(large, H);

    rep.consistent_irregular = nmin < th.eps && nmax > th.M;
    rep.consistent_distributionally_irregular =
        rep.small_norm_density.upper_stat > 0.9 &&
        rep.large_norm_density.upper_stat > 0.9;
    rep.consistent_absolutely_mean_irregular = cmin < th.eps && cmax > th.M;
    return rep;
}

} // namespace opchaos
