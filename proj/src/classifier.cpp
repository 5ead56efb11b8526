#include "opchaos/classifier.hpp"

#include <algorithm>
#include <cmath>

namespace opchaos {

const char* to_string(Property p) {
    switch (p) {
    case Property::PowerBounded: return "power-bounded";
    case Property::LiYorke: return "li-yorke";
    case Property::DistributionalChaos: return "distributional-chaos";
    case Property::DenselyDistributionalChaos: return "densely-distributional-chaos";
    case Property::AbsolutelyCesaroBounded: return "absolutely-cesaro-bounded";
    case Property::MeanLiYorke: return "mean-li-yorke";
    }
    return "?";
}

const char* to_string(Status s) {
    switch (s) {
    case Status::ExactByClosedForm: return "exact-by-closed-form";
    case Status::CertifiedByTheorem: return "certified-by-theorem";
    case Status::SupportedAtHorizon: return "supported-at-horizon";
    case Status::RefutedAtHorizon: return "refuted-at-horizon";
    case Status::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

constexpr double kVanishTol = 1e-6;
constexpr double kZeroTol = 1e-9;

bool spec_has_zero(const WeightSpec& spec) {
    if (spec.has_zero_weight()) return true;
    if (const auto* c = std::get_if<Constant>(&spec.generator()))
        return c->value == 0.0;
    if (const auto* pw = std::get_if<PiecewiseBilateral>(&spec.generator())) {
        auto half_zero = [](const HalfGen& h) {
            if (const auto* c = std::get_if<Constant>(&h)) return c->value == 0.0;
            return false; // periodic blocks are validated nonzero
        };
        return half_zero(pw->neg) || half_zero(pw->pos);
    }
    return false;
}

const WeightSpec& shift_spec(const AtomicSystem& system) {
    if (!system.is_shift())
        throw DomainMismatch("operation requires a shift-structured system");
    return system.shift().spec;
}

// sup_i |w_i...w_{i+n-1}| with a scan fallback for table specs
SupWindowResult sup_window_or_scan(const WeightSpec& spec, index_t n) {
    try {
        return sup_window_product(spec, n);
    } catch (const ExactUnavailable&) {
        IndexRange r{spec.min_index().value_or(-kDefaultIndexCap),
                     spec.max_index().value_or(kDefaultIndexCap)};
        return sup_window_product(spec, n, r);
    }
}

struct VanishCheck {
    bool pass = true;
    bool exact = true;
    double tail_max = 0.0;
};

// finite-horizon version of: mu_n(f^{-n}(B)) -> 0 along D, per fixed set B.
// For unilateral shifts and finite sets the preimage empties out, so the
// limit is exactly 0.
VanishCheck vanishing_along(const AtomicSystem& system,
                            const std::vector<AtomSet>& sets, const IndexSet& D,
                            index_t horizon) {
    VanishCheck out;
    const bool empties = system.is_shift() &&
                         system.shift().spec.min_index().has_value();
    for (const auto& B : sets) {
        if (B.empty()) continue;
        if (empties) continue; // mu_n(f^{-n}(B)) = 0 once n steps clear max(B)
        out.exact = false;
        std::vector<double> vals;
        std::vector<index_t> ns;
        for (index_t n = 1; n <= horizon; ++n) {
            if (!D.contains(n)) continue;
            vals.push_back(mu_n_preimage(system, B, n));
            ns.push_back(n);
        }
        if (vals.empty()) continue;
        const size_t tail0 = vals.size() / 2;
        double m = 0.0;
        for (size_t i = tail0; i < vals.size(); ++i) m = std::max(m, vals[i]);
        out.tail_max = std::max(out.tail_max, m);
        if (m > kVanishTol) out.pass = false;
    }
    return out;
}

} // namespace

Verdict classify_power_bounded(const AtomicSystem& system, index_t horizon,
                               std::optional<double> user_bound) {
    Verdict v;
    v.property = Property::PowerBounded;
    v.horizon = horizon;
    v.theorem_tag = "iterate-norm-window-sup-dichotomy";

    if (system.is_shift()) {
        const WeightSpec& spec = system.shift().spec;
        auto closed = window_sup_bounded_closed_form(spec);
        if (closed) {
            v.holds = *closed;
            v.status = Status::ExactByClosedForm;
            v.certificate["window_sup_bounded"] = *closed;
            if (!v.holds && user_bound) {
                for (index_t n = 1; n <= horizon; ++n) {
                    auto s = sup_window_or_scan(spec, n);
                    if (s.value > *user_bound) {
                        v.status = Status::RefutedAtHorizon;
                        v.witnesses.push_back(
                            "||T^" + std::to_string(n) + "|| = " +
                            std::to_string(s.value) + " > bound " +
                            std::to_string(*user_bound));
                        v.certificate["witness_n"] = n;
                        v.certificate["witness_norm"] = s.value;
                        v.certificate["user_bound"] = *user_bound;
                        break;
                    }
                }
            }
            return v;
        }
    }

    // scanned path (table specs / explicit systems)
    auto series = norm_series(system, horizon);
    double sup = 0.0;
    index_t arg = 0;
    for (index_t n = 1; n <= horizon; ++n) {
        const double x = series.values[static_cast<size_t>(n - 1)];
        if (x > sup) {
            sup = x;
            arg = n;
        }
        if (user_bound && x > *user_bound) {
            v.holds = false;
            v.status = Status::RefutedAtHorizon;
            v.witnesses.push_back("||T^" + std::to_string(n) + "|| = " +
                                  std::to_string(x) + " > bound " +
                                  std::to_string(*user_bound));
            v.certificate["witness_n"] = n;
            v.certificate["witness_norm"] = x;
            v.certificate["user_bound"] = *user_bound;
            return v;
        }
    }
    v.holds = true;
    v.status = Status::SupportedAtHorizon;
    v.certificate["observed_sup"] = sup;
    v.certificate["observed_argmax"] = arg;
    return v;
}

Verdict classify_li_yorke(const AtomicSystem& system, index_t horizon) {
    const WeightSpec& spec = shift_spec(system);
    const bool bilateral = spec.domain() == Domain::BilateralZ;
    if (bilateral && spec_has_zero(spec))
        throw ZeroWeightBilateral("bilateral dichotomy needs nonzero weights");

    Verdict v;
    v.property = Property::LiYorke;
    v.horizon = horizon;

    Verdict pb = classify_power_bounded(system, horizon);
    const bool pb_exact = pb.status == Status::ExactByClosedForm;
    v.certificate["power_bounded"] = pb.holds;

    if (!bilateral) {
        v.theorem_tag = "unilateral-shift-li-yorke-dichotomy";
        v.holds = !pb.holds;
        v.status = pb_exact ? Status::ExactByClosedForm : Status::SupportedAtHorizon;
        return v;
    }

    v.theorem_tag = "bilateral-shift-backward-liminf-dichotomy";
    auto bl = liminf_backward_products(spec, horizon);
    bool vanish, vanish_exact;
    if (bl.exact_limit) {
        vanish = *bl.exact_limit == 0.0;
        vanish_exact = true;
        v.certificate["backward_liminf"] = *bl.exact_limit;
    } else {
        vanish = bl.running_min_tail < kZeroTol;
        vanish_exact = false;
        v.certificate["backward_liminf_stat"] = bl.running_min_tail;
    }
    v.holds = !pb.holds && vanish;
    // not power-bounded is necessary; a definite positive answer needs both
    // clauses settled, a definite negative answer needs one settled clause
    const bool settled =
        (pb_exact && pb.holds) || (vanish_exact && !vanish) || (pb_exact && vanish_exact);
    v.status = settled ? Status::ExactByClosedForm : Status::SupportedAtHorizon;
    return v;
}

SubspaceReport subspace_boundedness_check(const AtomicSystem& system,
                                          const std::vector<AtomSet>& family,
                                          SubspaceMode mode, index_t horizon,
                                          std::optional<double> user_bound) {
    if (family.empty()) throw EmptyFamily("family must be nonempty");
    SubspaceReport rep;
    const bool supnorm = system.space().kind == SpaceKind::SupNorm;
    const double p = supnorm ? 1.0 : system.space().p;

    for (size_t si = 0; si < family.size(); ++si) {
        const AtomSet& B = family[si];
        double muB = 0.0;
        for (index_t x : B) muB += system.mass(x);
        if (muB == 0.0) throw EmptyFamily("family contains an empty set");

        std::vector<double> vals(static_cast<size_t>(horizon));
        for (index_t n = 1; n <= horizon; ++n) {
            vals[static_cast<size_t>(n - 1)] =
                supnorm ? sup_weight_on_preimage(system, B, n)
                        : mu_n_preimage(system, B, n);
        }
        // tail-half liminf statistic gates membership in the generated subspace
        double lim = std::numeric_limits<double>::infinity();
        for (size_t i = vals.size() / 2; i < vals.size(); ++i)
            lim = std::min(lim, vals[i]);
        rep.membership_stat.push_back(lim);
        rep.qualifies.push_back(lim <= kZeroTol);

        // restricted orbit of phi = chi_B / mu(B)^{1/p} (chi_B for sup norm)
        std::vector<double> orbit(vals.size());
        for (size_t i = 0; i < vals.size(); ++i)
            orbit[i] = supnorm ? vals[i] : std::pow(vals[i] / muB, 1.0 / p);
        if (mode == SubspaceMode::Cesaro) {
            double acc = 0.0;
            for (size_t i = 0; i < orbit.size(); ++i) {
                acc += std::pow(orbit[i], p);
                orbit[i] = acc / static_cast<double>(i + 1);
            }
        }
        for (size_t i = 0; i < orbit.size(); ++i) {
            if (orbit[i] > rep.restricted_sup) {
                rep.restricted_sup = orbit[i];
                rep.witness_set = static_cast<index_t>(si);
                rep.witness_n = static_cast<index_t>(i + 1);
            }
        }
    }
    if (user_bound && rep.restricted_sup > *user_bound) rep.exceeded_bound = true;
    return rep;
}

DCCertificate tower_certificate(const std::vector<index_t>& ks) {
    DCCertificate cert;
    cert.epsilon = 0.5;
    for (index_t k : ks) {
        if (k < 3) throw MalformedCertificate("schedule needs k >= 3");
        cert.epsilon = std::min(cert.epsilon, (static_cast<double>(k) - 2.0) / k);
        DCSchedule s;
        s.k = k;
        const index_t n_k =
            static_cast<index_t>(std::ceil(std::pow(static_cast<double>(k), k))) + 1;
        s.N_k = k * n_k;
        for (index_t j = 1; j <= (k - 1) * n_k; ++j) {
            s.atoms.push_back(n_k + j);
            s.coefficients.push_back(1.0 / static_cast<double>(n_k + j));
        }
        cert.schedule.push_back(std::move(s));
    }
    for (index_t a = 1; a <= 4; ++a) cert.vanishing_family.push_back({a});
    return cert;
}

namespace {

// Measure-weighted statistic sum_{i_j > n} b_j mu_n(f^{-n}({a_j})) on a
// shift system, for every n <= N, via backward products. Calls
// sink(n, value, base) with base = sum_j b_j mu({a_j}). Sup-norm systems use
// the window products themselves (exponent 1).
template <typename Sink>
void shift_weighted_mu_series(const AtomicSystem& system,
                              const std::vector<index_t>& atoms,
                              const std::vector<double>& coeffs, index_t N,
                              Sink&& sink) {
    const auto& sh = system.shift();
    const WeightSpec& spec = sh.spec;
    const bool supnorm = system.space().kind == SpaceKind::SupNorm;
    const double e = supnorm ? 1.0 : system.space().p;
    const double mass = supnorm ? 1.0 : sh.uniform_mass;
    const size_t J = atoms.size();

    std::vector<size_t> order(J);
    for (size_t j = 0; j < J; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](size_t x, size_t y) { return atoms[x] < atoms[y]; });
    std::vector<index_t> a(J);
    std::vector<double> b(J);
    for (size_t j = 0; j < J; ++j) {
        a[j] = atoms[order[j]];
        b[j] = coeffs[order[j]];
    }

    double base = 0.0;
    for (double x : b) base += x * mass;

    const auto min_idx = spec.min_index();
    const auto* rp = std::get_if<RatioPower>(&spec.generator());
    const double alpha = rp ? e / rp->q : 0.0;
    // incremental log backward products for the general path
    std::vector<double> logbw(J, 0.0);

    size_t first_alive = 0;
    for (index_t n = 1; n <= N; ++n) {
        while (first_alive < J && min_idx &&
               a[first_alive] - n * sh.step < *min_idx)
            ++first_alive;
        double s = 0.0;
        if (rp && sh.step == 1 && alpha == 1.0) {
            // |w_{i-n} ... w_{i-1}|^e telescopes to i/(i-n)
            for (size_t j = first_alive; j < J; ++j)
                s += b[j] * static_cast<double>(a[j]) /
                     static_cast<double>(a[j] - n);
        } else if (rp && sh.step == 1) {
            for (size_t j = first_alive; j < J; ++j)
                s += b[j] * std::pow(static_cast<double>(a[j]) /
                                         static_cast<double>(a[j] - n),
                                     alpha);
        } else {
            for (size_t j = first_alive; j < J; ++j) {
                logbw[j] += spec.log_weight(a[j] - n * sh.step);
                s += b[j] * std::exp(e * logbw[j]);
            }
        }
        sink(n, s * mass, base);
    }
}

} // namespace

DCCheckOutcome dc_certificate_check(const AtomicSystem& system,
                                    const DCCertificate& cert) {
    if (cert.epsilon <= 0.0 || cert.epsilon > 1.0)
        throw MalformedCertificate("epsilon must lie in (0, 1]");
    if (cert.schedule.empty())
        throw MalformedCertificate("empty schedule");
    index_t prev_N = 0;
    index_t max_N = 0;
    for (const auto& s : cert.schedule) {
        if (s.N_k <= prev_N)
            throw MalformedCertificate("N_k must be strictly increasing");
        prev_N = s.N_k;
        max_N = std::max(max_N, s.N_k);
        if (s.atoms.empty() || s.atoms.size() != s.coefficients.size())
            throw MalformedCertificate("schedule vector is malformed");
        for (double c : s.coefficients)
            if (!(c > 0.0)) throw MalformedCertificate("coefficients must be positive");
        for (index_t x : s.atoms)
            if (!system.atom_valid(x))
                throw MalformedCertificate("schedule atom outside the system");
    }

    DCCheckOutcome out;

    auto vanish = vanishing_along(system, cert.vanishing_family, cert.D,
                                  std::min<index_t>(max_N, 2048));
    out.vanishing_tail_max = vanish.tail_max;
    out.vanishing_exact = vanish.exact;

    bool all_pass = vanish.pass;
    for (const auto& sched : cert.schedule) {
        DCScheduleResult r;
        r.k = sched.k;
        r.N_k = sched.N_k;
        r.required = cert.epsilon * static_cast<double>(sched.N_k);
        r.margin_min = std::numeric_limits<double>::infinity();
        const double kd = static_cast<double>(sched.k);
        auto tally = [&](index_t, double s, double base) {
            if (s > kd * base) {
                ++r.count;
                r.margin_min = std::min(r.margin_min, s / base);
            }
        };
        if (system.is_shift()) {
            shift_weighted_mu_series(system, sched.atoms, sched.coefficients,
                                     sched.N_k, tally);
        } else {
            double base = 0.0;
            for (size_t j = 0; j < sched.atoms.size(); ++j)
                base += sched.coefficients[j] * system.mass(sched.atoms[j]);
            for (index_t n = 1; n <= sched.N_k; ++n) {
                double s = 0.0;
                for (size_t j = 0; j < sched.atoms.size(); ++j)
                    s += sched.coefficients[j] *
                         mu_n_preimage(system, {sched.atoms[j]}, n);
                tally(n, s, base);
            }
        }
        r.pass = static_cast<double>(r.count) >= r.required;
        all_pass = all_pass && r.pass;
        out.schedule_results.push_back(r);
    }

    Verdict& v = out.verdict;
    v.property = Property::DistributionalChaos;
    v.horizon = max_N;
    v.theorem_tag = "two-condition-count-certificate";
    v.holds = all_pass;
    v.status = all_pass ? Status::CertifiedByTheorem : Status::Inconclusive;
    v.certificate["epsilon"] = cert.epsilon;
    v.certificate["vanishing_tail_max"] = vanish.tail_max;
    v.certificate["vanishing_exact"] = vanish.exact;
    json arr = json::array();
    for (const auto& r : out.schedule_results) {
        json e;
        e["k"] = r.k;
        e["N_k"] = r.N_k;
        e["count"] = r.count;
        e["required"] = r.required;
        e["pass"] = r.pass;
        arr.push_back(e);
    }
    v.certificate["schedule"] = arr;
    return out;
}

Verdict dc_density_criterion(const AtomicSystem& system, index_t k_max,
                             index_t N_max) {
    const WeightSpec& spec = shift_spec(system);
    if (k_max < 1 || N_max < 1) throw ConfigError("k_max and N_max must be positive");

    Verdict v;
    v.property = Property::DistributionalChaos;
    v.horizon = N_max;
    v.theorem_tag = "window-count-density-criterion";

    bool exact = true;
    if (spec.domain() == Domain::BilateralZ) {
        if (spec_has_zero(spec))
            throw ZeroWeightBilateral("criterion needs nonzero weights");
        auto bl = liminf_backward_products(spec, std::max<index_t>(N_max, 1000));
        bool vanish;
        if (bl.exact_limit) {
            vanish = *bl.exact_limit == 0.0;
        } else {
            vanish = bl.running_min_tail < kZeroTol;
            exact = false;
        }
        if (!vanish) {
            v.status = Status::Inconclusive;
            v.witnesses.push_back("backward products do not vanish");
            return v;
        }
    }

    std::vector<double> sup_windows(static_cast<size_t>(N_max));
    for (index_t n = 1; n <= N_max; ++n) {
        auto s = sup_window_or_scan(spec, n);
        sup_windows[static_cast<size_t>(n - 1)] = s.value;
        exact = exact && s.exact;
    }

    double statistic = std::numeric_limits<double>::infinity();
    json per_k = json::array();
    for (index_t k = 1; k <= k_max; ++k) {
        index_t cnt = 0;
        double stat_k = 0.0;
        for (index_t N = 1; N <= N_max; ++N) {
            if (sup_windows[static_cast<size_t>(N - 1)] > static_cast<double>(k))
                ++cnt;
            stat_k = std::max(stat_k,
                              static_cast<double>(cnt) / static_cast<double>(N));
        }
        statistic = std::min(statistic, stat_k);
        json e;
        e["k"] = k;
        e["stat"] = stat_k;
        per_k.push_back(e);
    }
    v.certificate["per_k"] = per_k;
    v.certificate["statistic"] = statistic;
    v.holds = statistic > 0.0;
    if (!v.holds)
        v.status = Status::Inconclusive;
    else
        v.status = exact ? Status::ExactByClosedForm : Status::SupportedAtHorizon;
    return v;
}

Verdict tail_sum_dc_test(const AtomicSystem& system,
                   const std::function<AtomSet(index_t)>& family, const IndexSet& D,
                   const IndexSet& E, index_t horizon,
                   std::optional<TailBound> tail) {
    if (system.is_shift()) {
        if (spec_has_zero(system.shift().spec))
            throw NonpositiveWeight("construction requires positive weights");
    } else {
        for (const auto& [atom, w] : system.explicit_structure().weight)
            if (w <= 0.0) throw NonpositiveWeight("construction requires positive weights");
    }

    Verdict v;
    v.property = Property::DenselyDistributionalChaos;
    v.horizon = horizon;
    v.theorem_tag = "tail-sum-vector-construction";

    auto dens = density_estimate(E, horizon);
    const bool dens_exact = dens.exact.has_value();
    const bool dens_ok = dens_exact ? dens.exact->second > 0.0 : dens.upper_stat > 0.0;
    v.certificate["E_upper_density_stat"] = dens.upper_stat;
    if (!dens_ok) {
        v.status = Status::Inconclusive;
        v.witnesses.push_back("E shows no positive upper density");
        return v;
    }

    DCVectorPlan plan;
    try {
        plan = construct_dc_vector(system, family, E, horizon, tail);
    } catch (const DivergentASeries& e) {
        v.status = Status::Inconclusive;
        v.witnesses.push_back(std::string("summability fails: ") + e.what());
        return v;
    }

    std::vector<AtomSet> sets;
    for (index_t k = 1; k <= std::min<index_t>(horizon, 8); ++k)
        sets.push_back(family(k));
    auto vanish = vanishing_along(system, sets, D, horizon);

    v.certificate["bound"] = plan.bound;
    v.certificate["partial_norm"] = plan.partial_norm.empty()
                                        ? 0.0
                                        : plan.partial_norm.back();
    v.certificate["certified_tail"] = plan.certified_tail;
    v.certificate["vanishing_tail_max"] = vanish.tail_max;

    bool within = true;
    for (double s : plan.partial_norm)
        if (s > plan.bound * (1 + 1e-12)) within = false;

    if (!within || !vanish.pass) {
        v.status = Status::Inconclusive;
        return v;
    }
    v.holds = true;
    v.status = (plan.certified_tail && dens_exact && vanish.exact)
                   ? Status::CertifiedByTheorem
                   : Status::SupportedAtHorizon;
    return v;
}

Verdict dissipative_ddc_test(const AtomicSystem& system, index_t horizon) {
    auto hopf = hopf_decompose(system, horizon);
    if (!system.is_shift() && hopf.dissipative.empty())
        throw NoDissipativePart("system is conservative");
    if (system.is_shift() && hopf.all_conservative)
        throw NoDissipativePart("system is conservative");

    Verdict v;
    v.property = Property::DenselyDistributionalChaos;
    v.horizon = horizon;
    v.theorem_tag = "dissipative-orbit-sum";

    if (!system.is_shift()) {
        // injectivity is only needed where the orbit sum runs
        std::map<index_t, int> hits;
        for (index_t x : hopf.dissipative)
            if (++hits[system.map_atom(x)] > 1)
                throw NonInjectiveMap("orbit sums need injectivity on the "
                                      "dissipative part");
        AtomSet B = hopf.wandering_generator.value_or(AtomSet{hopf.dissipative.front()});
        // forward orbit stays in the dissipative part; backward preimages are
        // empty by choice of the generator. Finite sums converge exactly.
        auto is_diss = [&](index_t x) {
            return std::find(hopf.dissipative.begin(), hopf.dissipative.end(), x) !=
                   hopf.dissipative.end();
        };
        double total = 0.0;
        for (index_t b : B) {
            index_t x = b;
            for (index_t n = 0; n <= horizon && is_diss(x); ++n) {
                total += system.mass(x);
                x = system.map_atom(x);
            }
        }
        v.holds = true;
        v.status = Status::CertifiedByTheorem;
        v.certificate["orbit_mass_sum"] = total;
        v.certificate["generator"] = B;
        return v;
    }

    const WeightSpec& spec = system.shift().spec;
    if (spec_has_zero(spec)) throw NonpositiveWeight("weights must be nonzero");
    const double p = system.space().kind == SpaceKind::SupNorm ? 1.0 : system.space().p;
    const index_t b = spec.min_index().value_or(0);

    // sum_n |w^(n)(b)|^{-p}: closed-form convergence where available
    std::optional<bool> converges;
    if (const auto* c = std::get_if<Constant>(&spec.generator()))
        converges = std::fabs(c->value) > 1.0;
    else if (const auto* per = std::get_if<Periodic>(&spec.generator())) {
        double lp = 0.0;
        for (double x : per->block) lp += std::log(std::fabs(x));
        converges = lp > 0.0;
    } else if (const auto* rp = std::get_if<RatioPower>(&spec.generator()))
        converges = p / rp->q > 1.0;
    else if (std::holds_alternative<BlockEuler>(spec.generator()))
        converges = false; // block-end windows return to 1 infinitely often

    double partial = 0.0;
    double last = 0.0;
    for (index_t n = 1; n <= std::min<index_t>(horizon, 4096); ++n) {
        last = std::exp(-p * log_window_product(spec, b, n));
        partial += last;
    }
    v.certificate["partial_sum"] = partial;
    v.certificate["base_atom"] = b;

    if (converges) {
        v.holds = *converges;
        v.status = *converges ? Status::CertifiedByTheorem : Status::Inconclusive;
        if (!*converges) v.witnesses.push_back("orbit sum diverges analytically");
        return v;
    }
    if (last < 1e-9 * std::max(1.0, partial)) {
        v.holds = true;
        v.status = Status::SupportedAtHorizon;
    } else {
        v.status = Status::Inconclusive;
    }
    return v;
}

Verdict classify_acb(const AtomicSystem& system, double p, index_t horizon,
                     std::optional<double> user_bound,
                     std::optional<IndexRange> index_range) {
    Verdict v;
    v.property = Property::AbsolutelyCesaroBounded;
    v.horizon = horizon;
    v.theorem_tag = "cesaro-statistic-bound";
    v.certificate["p"] = p;

    auto rep = np_cesaro(system, p, horizon, index_range);
    const bool ratio_family =
        system.is_shift() &&
        std::holds_alternative<RatioPower>(system.shift().spec.generator());

    if (rep.divergence_flag) {
        v.holds = false;
        if (ratio_family) {
            // harmonic-type divergence witness at a large index
            const index_t iw = index_range ? index_range->hi : 10000;
            const double val = per_index_cesaro(system, p, iw, iw - 1);
            v.status = Status::CertifiedByTheorem;
            v.witnesses.push_back("per-index mean at i = " + std::to_string(iw) +
                                  " is " + std::to_string(val));
            v.certificate["witness_index"] = iw;
            v.certificate["witness_value"] = val;
        } else {
            v.status = Status::ExactByClosedForm;
        }
        v.certificate["scanned_value"] = rep.value;
        return v;
    }
    if (rep.exact_bound) {
        v.holds = true;
        v.status = ratio_family ? Status::CertifiedByTheorem : Status::ExactByClosedForm;
        v.certificate["bound"] = *rep.exact_bound;
        v.certificate["scanned_value"] = rep.value;
        return v;
    }
    v.certificate["scanned_value"] = rep.value;
    if (user_bound && rep.value > *user_bound) {
        v.holds = false;
        v.status = Status::RefutedAtHorizon;
        v.witnesses.push_back("mean at index " + std::to_string(rep.witness_index) +
                              ", N = " + std::to_string(rep.witness_N) +
                              " exceeds bound");
        v.certificate["witness_index"] = rep.witness_index;
        v.certificate["witness_N"] = rep.witness_N;
        return v;
    }
    v.holds = true;
    v.status = Status::SupportedAtHorizon;
    return v;
}

Verdict classify_mean_li_yorke(const AtomicSystem& system, double p, index_t horizon) {
    Verdict v;
    v.property = Property::MeanLiYorke;
    v.horizon = horizon;

    if (!system.is_shift()) {
        // the necessary and sufficient conditions only meet for shift
        // structures; report the Cesaro side and stop there
        auto acb = classify_acb(system, p, horizon);
        if (acb.holds && acb.status == Status::ExactByClosedForm) {
            v.holds = false;
            v.status = Status::ExactByClosedForm;
        } else {
            v.status = Status::Inconclusive;
            v.witnesses.push_back("necessary and sufficient conditions do not "
                                  "coincide for general systems");
        }
        v.theorem_tag = "cesaro-boundedness-necessary-condition";
        return v;
    }

    const WeightSpec& spec = system.shift().spec;
    const bool bilateral = spec.domain() == Domain::BilateralZ;
    if (bilateral && spec_has_zero(spec))
        throw ZeroWeightBilateral("bilateral dichotomy needs nonzero weights");

    auto acb = classify_acb(system, p, horizon);
    const bool acb_settled = acb.status == Status::ExactByClosedForm ||
                             acb.status == Status::CertifiedByTheorem;
    v.certificate["acb"] = acb.holds;

    if (!bilateral) {
        v.theorem_tag = "unilateral-shift-mean-li-yorke-dichotomy";
        v.holds = !acb.holds;
        if (!acb_settled)
            v.status = Status::SupportedAtHorizon;
        else
            v.status = v.holds ? Status::CertifiedByTheorem : Status::ExactByClosedForm;
        return v;
    }

    v.theorem_tag = "bilateral-shift-backward-cesaro-dichotomy";
    auto bc = liminf_backward_cesaro(spec, horizon);
    bool vanish, vanish_exact;
    if (bc.exact_limit) {
        vanish = *bc.exact_limit == 0.0;
        vanish_exact = true;
        v.certificate["backward_cesaro_liminf"] = *bc.exact_limit;
    } else {
        vanish = bc.running_min_tail < kZeroTol;
        vanish_exact = false;
        v.certificate["backward_cesaro_stat"] = bc.running_min_tail;
    }
    v.holds = !acb.holds && vanish;
    const bool settled = (acb_settled && acb.holds) || (vanish_exact && !vanish) ||
                         (acb_settled && vanish_exact);
    if (!settled)
        v.status = Status::SupportedAtHorizon;
    else
        v.status = v.holds ? Status::CertifiedByTheorem : Status::ExactByClosedForm;
    return v;
}

} // namespace opchaos
