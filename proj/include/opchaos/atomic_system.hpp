#ifndef OPCHAOS_ATOMIC_SYSTEM_HPP
#define OPCHAOS_ATOMIC_SYSTEM_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opchaos/weight_spec.hpp"

namespace opchaos {

enum class SpaceKind { Lp, SupNorm };

struct Space {
    SpaceKind kind = SpaceKind::Lp;
    double p = 2.0; // exponent, Lp only

    static Space lp(double p) {
        if (p < 1.0) throw ConfigError("Lp requires p >= 1");
        return Space{SpaceKind::Lp, p};
    }
    static Space sup() { return Space{SpaceKind::SupNorm, 0.0}; }
};

using AtomSet = std::vector<index_t>;

// Shift-structured system: atoms are the weight domain's indices, f(k) = k + step.
// step > 1 arises from grid refinement of translation operators.
struct ShiftStructure {
    WeightSpec spec;
    double uniform_mass = 1.0;
    index_t step = 1;
};

// Finite explicit system: f given as a table. map must be total on atoms.
struct ExplicitStructure {
    std::vector<index_t> atoms;
    std::map<index_t, index_t> map;
    std::map<index_t, double> weight;
    std::map<index_t, double> mass; // missing entries default to 1
};

class AtomicSystem {
  public:
    AtomicSystem(ShiftStructure shift, Space space);
    AtomicSystem(ExplicitStructure expl, Space space);

    const Space& space() const { return space_; }
    bool is_shift() const { return shift_.has_value(); }
    const ShiftStructure& shift() const;
    const ExplicitStructure& explicit_structure() const;

    bool atom_valid(index_t x) const;
    double mass(index_t x) const;
    double log_weight(index_t x) const; // log |w(x)|
    index_t map_atom(index_t x) const;  // f(x)
    index_t map_n(index_t x, index_t n) const;

    // log |w^(n)(x)| = log |w(f^{n-1}x) ... w(x)|
    double log_weight_n(index_t x, index_t n) const;

    // f^{-1}({x}) among described atoms
    std::vector<index_t> preimage(index_t x) const;
    std::vector<index_t> preimage_n(index_t x, index_t n) const;

  private:
    Space space_;
    std::optional<ShiftStructure> shift_;
    std::optional<ExplicitStructure> expl_;
    std::multimap<index_t, index_t> reverse_; // explicit systems only
};

AtomicSystem build_shift_system(WeightSpec spec, Space space,
                                std::optional<double> mass = std::nullopt);

// Translation operator with weights constant on unit cells reduces exactly to
// a shift system. cell_weights[j] covers cell origin_cell + j; refine = m
// splits every cell into m atoms of mass 1/m (map step becomes m).
AtomicSystem reduce_translation(const std::vector<double>& cell_weights,
                                index_t origin_cell, Domain domain, Space space,
                                Frontier frontier = Frontier::Hold,
                                index_t refine = 1);

// mu_n(f^{-n}(B)) = sum over x with f^n(x) in B of mass(x) |w^(n)(x)|^p.
double mu_n_preimage(const AtomicSystem& system, const AtomSet& B, index_t n);

// ||w^(n)|| restricted to f^{-n}(B): max over preimage atoms; 0 when empty.
double sup_weight_on_preimage(const AtomicSystem& system, const AtomSet& B, index_t n);

struct BoundednessReport {
    index_t horizon = 0;
    double c_min = 0.0;
    std::vector<std::string> violations;
};

// c_min = max over scanned singletons B of mu_1(B)/mu(f(B)); also asserts
// mu_n(B) <= c_min^n mu(f^n(B)) for sampled atoms and n <= horizon.
BoundednessReport validate_boundedness(const AtomicSystem& system, index_t horizon);

struct HopfPartition {
    bool all_conservative = false; // summary flags for infinite/shift systems
    bool all_dissipative = false;
    AtomSet conservative;
    AtomSet dissipative;
    std::optional<AtomSet> wandering_generator;
    index_t verified_horizon = 0;
};

// Conservative part = periodic atoms, dissipative = rest; for shifts the whole
// system is dissipative with wandering generator {0} (bilateral) or {1}.
HopfPartition hopf_decompose(const AtomicSystem& system, index_t horizon = 1000);

} // namespace opchaos

#endif
