#ifndef OPCHAOS_CLASSIFIER_HPP
#define OPCHAOS_CLASSIFIER_HPP

#include <string>

#include "json.hpp"
#include "opchaos/index_set.hpp"
#include "opchaos/norm_engine.hpp"
#include "opchaos/orbit.hpp"

namespace opchaos {

using json = nlohmann::ordered_json;

enum class Property {
    PowerBounded,
    LiYorke,
    DistributionalChaos,
    DenselyDistributionalChaos,
    AbsolutelyCesaroBounded,
    MeanLiYorke,
};

enum class Status {
    ExactByClosedForm,
    CertifiedByTheorem,
    SupportedAtHorizon,
    RefutedAtHorizon,
    Inconclusive,
};

const char* to_string(Property p);
const char* to_string(Status s);

struct Verdict {
    Property property;
    Status status = Status::Inconclusive;
    bool holds = false; // meaningless when Inconclusive
    index_t horizon = 0;
    std::vector<std::string> witnesses;
    json certificate = json::object();
    std::string theorem_tag;
};

// sup_n ||T^n|| < inf. Closed form for analytic shift families; otherwise the
// scanned norm series, optionally refuted against a user bound.
Verdict classify_power_bounded(const AtomicSystem& system, index_t horizon,
                               std::optional<double> user_bound = std::nullopt);

// Unilateral shifts: Li-Yorke iff not power-bounded. Bilateral shifts
// additionally need vanishing backward products (weights must be nonzero).
Verdict classify_li_yorke(const AtomicSystem& system, index_t horizon);

enum class SubspaceMode { Power, Cesaro };

struct SubspaceReport {
    std::vector<bool> qualifies;          // per set: vanishing mu_n statistic
    std::vector<double> membership_stat;  // tail liminf statistic per set
    double restricted_sup = 0.0;          // sup ||T^n phi_i|| over qualifying sets
    index_t witness_set = 0;
    index_t witness_n = 0;
    bool exceeded_bound = false;
};

SubspaceReport subspace_boundedness_check(const AtomicSystem& system,
                                          const std::vector<AtomSet>& family,
                                          SubspaceMode mode, index_t horizon,
                                          std::optional<double> user_bound = std::nullopt);

// One window schedule of a distributional-chaos certificate: the vector
// y = sum_j coefficients[j] e_{atoms[j]} must beat level k on a fraction
// >= epsilon of {1..N_k}.
struct DCSchedule {
    index_t k = 0;
    index_t N_k = 0;
    std::vector<index_t> atoms;
    std::vector<double> coefficients;
};

struct DCCertificate {
    std::vector<AtomSet> vanishing_family; // condition (a) sets
    IndexSet D = IndexSet::all();
    double epsilon = 0.5;
    std::vector<DCSchedule> schedule;
};

// Certificate for the ratio-power family at the critical exponent:
// n_k = ceil(k^k)+1, N_k = k n_k, atoms n_k + j with coefficients 1/(n_k+j).
DCCertificate tower_certificate(const std::vector<index_t>& ks);

struct DCScheduleResult {
    index_t k = 0;
    index_t N_k = 0;
    index_t count = 0;       // card{n <= N_k : ||T^n y|| > k ||y||}
    double required = 0.0;   // epsilon * N_k
    double margin_min = 0.0; // smallest ratio among counted n
    bool pass = false;
};

struct DCCheckOutcome {
    Verdict verdict;
    std::vector<DCScheduleResult> schedule_results;
    double vanishing_tail_max = 0.0;
    bool vanishing_exact = false;
};

DCCheckOutcome dc_certificate_check(const AtomicSystem& system,
                                    const DCCertificate& cert);

// Window-count criterion on the sup-norm side: for each k, the density of
// {n <= N : sup_i |w_i...w_{i+n-1}| > k} must stay positive.
Verdict dc_density_criterion(const AtomicSystem& system, index_t k_max, index_t N_max);

// Summability construction: certifies dense distributional chaos from the
// series a_n = (mu(A_n)/mu_n(f^{-n}(A_n)))^{1/p}.
Verdict tail_sum_dc_test(const AtomicSystem& system,
                   const std::function<AtomSet(index_t)>& family, const IndexSet& D,
                   const IndexSet& E, index_t horizon,
                   std::optional<TailBound> tail = std::nullopt);

// Dense distributional chaos from the dissipative part: picks B' from the
// Hopf decomposition and checks the orbit-sum convergence.
Verdict dissipative_ddc_test(const AtomicSystem& system, index_t horizon);

Verdict classify_acb(const AtomicSystem& system, double p, index_t horizon,
                     std::optional<double> user_bound = std::nullopt,
                     std::optional<IndexRange> index_range = std::nullopt);

// Bilateral shifts: mean Li-Yorke iff not ACB and the backward Cesaro
// averages have liminf 0; unilateral shifts: iff not ACB.
Verdict classify_mean_li_yorke(const AtomicSystem& system, double p, index_t horizon);

} // namespace opchaos

#endif
