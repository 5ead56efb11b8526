#ifndef OPCHAOS_WEIGHT_SPEC_HPP
#define OPCHAOS_WEIGHT_SPEC_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "opchaos/errors.hpp"

namespace opchaos {

using index_t = std::int64_t;

enum class Domain { UnilateralN, BilateralZ };

enum class Frontier { Zero, Hold, Error };

// Built-in weight generators. All criteria downstream depend only on |w|,
// so generators describe magnitudes; signs may be kept as metadata.

struct Constant {
    double value;
};

// w_n = ((n+1)/n)^(1/q), n >= 1. Unilateral only.
struct RatioPower {
    double q;
};

struct Periodic {
    std::vector<double> block;
};

struct Table {
    std::vector<double> values;
    index_t origin = 1; // index of values[0]
    Frontier frontier = Frontier::Error;
};

// Concatenated blocks (e^{1/n} repeated n times, then e^{-1}) for n = 2,3,...
// Unilateral only.
struct BlockEuler {};

// Sub-generators allowed on each half of a bilateral piecewise spec.
using HalfGen = std::variant<Constant, Periodic>;

// neg applies to indices <= 0, pos to indices >= 1.
struct PiecewiseBilateral {
    HalfGen neg;
    HalfGen pos;
};

using Generator =
    std::variant<Constant, RatioPower, Periodic, Table, BlockEuler, PiecewiseBilateral>;

class WeightSpec {
  public:
    WeightSpec(Domain domain, Generator gen, bool magnitude_only = true);

    Domain domain() const { return domain_; }
    const Generator& generator() const { return gen_; }
    bool magnitude_only() const { return magnitude_only_; }

    // log |w_i|; -inf encodes a zero weight. Throws IndexOutOfDomain for
    // indices outside the domain (or a Table with frontier Error).
    double log_weight(index_t i) const;
    double weight(index_t i) const;

    // True when some in-domain weight is exactly zero (only Table can).
    bool has_zero_weight() const;

    // Smallest valid index (1 for unilateral), if the domain is bounded below.
    std::optional<index_t> min_index() const;
    // Largest valid index for Table specs with frontier Error.
    std::optional<index_t> max_index() const;

    bool index_valid(index_t i) const;

  private:
    Domain domain_;
    Generator gen_;
    bool magnitude_only_;
    bool table_has_zero_ = false;

    void validate() const;
};

// |w_i * w_{i+1} * ... * w_{i+n-1}|, log-space internally.
double window_product(const WeightSpec& spec, index_t i, index_t n);
double log_window_product(const WeightSpec& spec, index_t i, index_t n);

// |w_{i-n} * ... * w_{i-1}|; 0 for a unilateral spec when n >= i.
double backward_window_product(const WeightSpec& spec, index_t i, index_t n);

struct IndexRange {
    index_t lo;
    index_t hi; // inclusive
};

struct SupWindowResult {
    double value = 0.0;
    index_t witness = 0;
    bool exact = false;
};

// sup_i |w_i ... w_{i+n-1}|. With no scan range, returns the closed-form
// supremum for analytic families (exact=true) or throws ExactUnavailable.
SupWindowResult sup_window_product(const WeightSpec& spec, index_t n,
                                   std::optional<IndexRange> scan = std::nullopt);

struct BackwardLiminf {
    double running_min_tail = std::numeric_limits<double>::infinity();
    // Present only when the generator forces the limit analytically;
    // +inf marks provable divergence.
    std::optional<double> exact_limit;
};

// Finite-horizon estimate of liminf_n |w_{-n} ... w_{-1}| (bilateral only).
BackwardLiminf liminf_backward_products(const WeightSpec& spec, index_t horizon);

// liminf_N (1/N) sum_{n<=N} |w_{-n} ... w_{-1}|, same conventions.
BackwardLiminf liminf_backward_cesaro(const WeightSpec& spec, index_t horizon);

// True when sup_{n} sup_i |w_i...w_{i+n-1}| is provably finite/infinite.
// Returns nullopt when no closed form applies (Table specs).
std::optional<bool> window_sup_bounded_closed_form(const WeightSpec& spec);

} // namespace opchaos

#endif
