#include "opchaos/atomic_system.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace opchaos {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

AtomicSystem::AtomicSystem(ShiftStructure shift, Space space)
    : space_(space), shift_(std::move(shift)) {
    if (shift_->uniform_mass <= 0.0) throw ConfigError("atom mass must be positive");
    if (shift_->step < 1) throw ConfigError("shift step must be >= 1");
}

AtomicSystem::AtomicSystem(ExplicitStructure expl, Space space)
    : space_(space), expl_(std::move(expl)) {
    std::set<index_t> ids(expl_->atoms.begin(), expl_->atoms.end());
    if (ids.size() != expl_->atoms.size()) throw ConfigError("duplicate atom ids");
    for (index_t a : expl_->atoms) {
        auto it = expl_->map.find(a);
        if (it == expl_->map.end()) throw ConfigError("map not total on atoms");
        if (!ids.count(it->second)) throw ConfigError("map leaves the atom set");
        if (!expl_->weight.count(a)) throw ConfigError("weight missing for atom");
        auto m = expl_->mass.find(a);
        if (m != expl_->mass.end() && m->second <= 0.0)
            throw ConfigError("atom mass must be positive");
        reverse_.emplace(it->second, a);
    }
}

const ShiftStructure& AtomicSystem::shift() const {
    if (!shift_) throw ConfigError("not a shift-structured system");
    return *shift_;
}

const ExplicitStructure& AtomicSystem::explicit_structure() const {
    if (!expl_) throw ConfigError("not an explicit system");
    return *expl_;
}

bool AtomicSystem::atom_valid(index_t x) const {
    if (shift_) {
        return shift_->spec.domain() == Domain::UnilateralN ? x >= 1 : true;
    }
    return expl_->map.count(x) > 0;
}

double AtomicSystem::mass(index_t x) const {
    if (shift_) {
        if (!atom_valid(x)) throw IndexOutOfDomain("no such atom");
        return shift_->uniform_mass;
    }
    auto it = expl_->mass.find(x);
    if (it != expl_->mass.end()) return it->second;
    if (!expl_->map.count(x)) throw IndexOutOfDomain("no such atom");
    return 1.0;
}

double AtomicSystem::log_weight(index_t x) const {
    if (shift_) return shift_->spec.log_weight(x);
    auto it = expl_->weight.find(x);
    if (it == expl_->weight.end()) throw IndexOutOfDomain("no such atom");
    const double v = it->second;
    return v == 0.0 ? kNegInf : std::log(std::fabs(v));
}

index_t AtomicSystem::map_atom(index_t x) const {
    if (shift_) return x + shift_->step;
    auto it = expl_->map.find(x);
    if (it == expl_->map.end()) throw IndexOutOfDomain("no such atom");
    return it->second;
}

index_t AtomicSystem::map_n(index_t x, index_t n) const {
    if (shift_) return x + n * shift_->step;
    index_t y = x;
    for (index_t j = 0; j < n; ++j) y = map_atom(y);
    return y;
}

double AtomicSystem::log_weight_n(index_t x, index_t n) const {
    if (n <= 0) throw ConfigError("n must be positive");
    if (shift_) {
        if (shift_->step == 1) return log_window_product(shift_->spec, x, n);
        double acc = 0.0;
        for (index_t j = 0; j < n; ++j) {
            double lw = shift_->spec.log_weight(x + j * shift_->step);
            if (lw == kNegInf) return kNegInf;
            acc += lw;
        }
        return acc;
    }
    double acc = 0.0;
    index_t y = x;
    for (index_t j = 0; j < n; ++j) {
        double lw = log_weight(y);
        if (lw == kNegInf) return kNegInf;
        acc += lw;
        y = map_atom(y);
    }
    return acc;
}

std::vector<index_t> AtomicSystem::preimage(index_t x) const {
    if (shift_) {
        const index_t y = x - shift_->step;
        if (atom_valid(y)) return {y};
        return {};
    }
    std::vector<index_t> out;
    auto [lo, hi] = reverse_.equal_range(x);
    for (auto it = lo; it != hi; ++it) out.push_back(it->second);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<index_t> AtomicSystem::preimage_n(index_t x, index_t n) const {
    if (shift_) {
        const index_t y = x - n * shift_->step;
        if (atom_valid(y)) return {y};
        return {};
    }
    std::vector<index_t> frontier{x};
    for (index_t j = 0; j < n; ++j) {
        std::vector<index_t> next;
        for (index_t a : frontier) {
            auto pre = preimage(a);
            next.insert(next.end(), pre.begin(), pre.end());
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    std::sort(frontier.begin(), frontier.end());
    return frontier;
}

AtomicSystem build_shift_system(WeightSpec spec, Space space,
                                std::optional<double> mass) {
    ShiftStructure s{std::move(spec), mass.value_or(1.0), 1};
    return AtomicSystem(std::move(s), space);
}

AtomicSystem reduce_translation(const std::vector<double>& cell_weights,
                                index_t origin_cell, Domain domain, Space space,
                                Frontier frontier, index_t refine) {
    if (cell_weights.empty()) throw ConfigError("no cell weights given");
    if (refine < 1) throw NonUnitGrid("refinement factor must be a positive integer");
    if (domain == Domain::UnilateralN && origin_cell < 1)
        throw IndexOutOfDomain("unilateral cells start at 1");
    std::vector<double> refined;
    refined.reserve(cell_weights.size() * static_cast<size_t>(refine));
    for (double w : cell_weights)
        for (index_t j = 0; j < refine; ++j) refined.push_back(w);
    Table tab{std::move(refined), (origin_cell - 1) * refine + 1, frontier};
    ShiftStructure s{WeightSpec(domain, std::move(tab)),
                     1.0 / static_cast<double>(refine), refine};
    return AtomicSystem(std::move(s), space);
}

double mu_n_preimage(const AtomicSystem& system, const AtomSet& B, index_t n) {
    if (system.space().kind != SpaceKind::Lp)
        throw SupNormMismatch("mu_n is an Lp quantity; use sup_weight_on_preimage");
    const double p = system.space().p;
    double total = 0.0;
    for (index_t b : B) {
        for (index_t x : system.preimage_n(b, n)) {
            const double lw = system.log_weight_n(x, n);
            if (lw == kNegInf) continue;
            total += system.mass(x) * std::exp(p * lw);
        }
    }
    return total;
}

double sup_weight_on_preimage(const AtomicSystem& system, const AtomSet& B, index_t n) {
    double best = 0.0;
    for (index_t b : B)
        for (index_t x : system.preimage_n(b, n))
            best = std::max(best, std::exp(system.log_weight_n(x, n)));
    return best;
}

namespace {

// Atoms scanned for shift systems: a window of `horizon` indices clipped to
// the weight domain's valid range.
std::vector<index_t> shift_scan_atoms(const AtomicSystem& sys, index_t horizon) {
    const auto& sh = sys.shift();
    index_t lo = sh.spec.domain() == Domain::UnilateralN ? 1 : -horizon;
    index_t hi = horizon;
    if (auto m = sh.spec.min_index()) lo = std::max(lo, *m);
    if (auto m = sh.spec.max_index()) hi = std::min(hi, *m);
    std::vector<index_t> out;
    for (index_t i = lo; i <= hi; ++i) out.push_back(i);
    return out;
}

} // namespace

BoundednessReport validate_boundedness(const AtomicSystem& system, index_t horizon) {
    if (system.space().kind != SpaceKind::Lp)
        throw SupNormMismatch("boundedness condition is an Lp statement");
    const double p = system.space().p;
    BoundednessReport rep;
    rep.horizon = horizon;

    std::vector<index_t> atoms = system.is_shift()
                                     ? shift_scan_atoms(system, horizon)
                                     : system.explicit_structure().atoms;
    auto image_mass = [&](index_t x, index_t n) -> std::optional<double> {
        const index_t y = system.map_n(x, n);
        if (!system.atom_valid(y)) return std::nullopt;
        return system.mass(y);
    };

    for (index_t x : atoms) {
        double lw;
        try {
            lw = system.log_weight(x);
        } catch (const IndexOutOfDomain&) {
            continue;
        }
        auto my = image_mass(x, 1);
        if (!my) continue;
        const double ratio = system.mass(x) * std::exp(p * lw) / *my;
        rep.c_min = std::max(rep.c_min, ratio);
    }

    // spot-check mu_n(B) <= c_min^n mu(f^n(B)) on sampled singletons
    const index_t n_cap = std::min<index_t>(horizon, 64);
    const index_t stride = std::max<index_t>(1, static_cast<index_t>(atoms.size()) / 32);
    for (size_t k = 0; k < atoms.size(); k += static_cast<size_t>(stride)) {
        const index_t x = atoms[k];
        for (index_t n = 1; n <= n_cap; ++n) {
            double lwn;
            try {
                lwn = system.log_weight_n(x, n);
            } catch (const IndexOutOfDomain&) {
                break;
            }
            auto my = image_mass(x, n);
            if (!my) break;
            const double mu_n = system.mass(x) * std::exp(p * lwn);
            const double bound = std::pow(rep.c_min, static_cast<double>(n)) * *my;
            if (mu_n > bound * (1.0 + 1e-9)) {
                rep.violations.push_back("atom " + std::to_string(x) + " n " +
                                         std::to_string(n));
            }
        }
    }
    return rep;
}

HopfPartition hopf_decompose(const AtomicSystem& system, index_t horizon) {
    HopfPartition part;
    part.verified_horizon = horizon;
    if (system.is_shift()) {
        part.all_dissipative = true;
        part.wandering_generator =
            AtomSet{system.shift().spec.domain() == Domain::BilateralZ ? index_t{0}
                                                                       : index_t{1}};
        return part;
    }
    const auto& ex = system.explicit_structure();
    const index_t count = static_cast<index_t>(ex.atoms.size());
    std::set<index_t> conservative;
    for (index_t a : ex.atoms) {
        // land in the eventual cycle, then test membership
        index_t y = a;
        for (index_t j = 0; j < count; ++j) y = system.map_atom(y);
        index_t z = system.map_atom(y);
        bool on_cycle = (a == y);
        while (z != y && !on_cycle) {
            if (z == a) on_cycle = true;
            z = system.map_atom(z);
        }
        if (on_cycle) conservative.insert(a);
    }
    for (index_t a : ex.atoms) {
        if (conservative.count(a))
            part.conservative.push_back(a);
        else
            part.dissipative.push_back(a);
    }
    part.all_conservative = part.dissipative.empty();
    part.all_dissipative = part.conservative.empty() && !part.dissipative.empty();
    if (part.dissipative.empty()) return part;

    // generator: dissipative atoms with no dissipative preimage
    std::set<index_t> diss(part.dissipative.begin(), part.dissipative.end());
    AtomSet gen;
    for (index_t a : part.dissipative) {
        bool has_diss_pre = false;
        for (index_t pre : system.preimage(a))
            if (diss.count(pre)) has_diss_pre = true;
        if (!has_diss_pre) gen.push_back(a);
    }
    // the generator must never return to itself under iteration
    std::set<index_t> genset(gen.begin(), gen.end());
    std::set<index_t> frontier = genset;
    for (index_t n = 1; n <= horizon && !frontier.empty(); ++n) {
        std::set<index_t> next;
        for (index_t a : frontier) next.insert(system.map_atom(a));
        for (index_t a : next)
            if (genset.count(a)) throw UndecidableTail("generator revisits itself");
        frontier = std::move(next);
    }
    part.wandering_generator = std::move(gen);
    return part;
}

} // namespace opchaos
