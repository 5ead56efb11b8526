#include "opchaos/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace opchaos {

DenseTruncation dense_truncation(const AtomicSystem& system, IndexRange window,
                                 size_t cap) {
    DenseTruncation out;
    if (system.is_shift()) {
        if (window.lo > window.hi) throw ConfigError("empty window");
        if (static_cast<size_t>(window.hi - window.lo + 1) > cap)
            throw WindowTooLarge("truncation window exceeds cap");
        for (index_t i = window.lo; i <= window.hi; ++i)
            if (system.atom_valid(i)) out.atoms.push_back(i);
    } else {
        out.atoms = system.explicit_structure().atoms;
        if (out.atoms.size() > cap) throw WindowTooLarge("system exceeds cap");
    }
    const size_t d = out.atoms.size();
    std::map<index_t, size_t> col;
    for (size_t j = 0; j < d; ++j) col[out.atoms[j]] = j;
    out.matrix.assign(d, std::vector<double>(d, 0.0));
    for (size_t r = 0; r < d; ++r) {
        const index_t x = out.atoms[r];
        double w;
        try {
            w = std::exp(system.log_weight(x));
        } catch (const IndexOutOfDomain&) {
            continue;
        }
        auto it = col.find(system.map_atom(x));
        if (it != col.end()) out.matrix[r][it->second] = w;
    }
    return out;
}

Matrix matrix_power(const Matrix& m, index_t n) {
    if (n < 1) throw ConfigError("n must be positive");
    const size_t d = m.size();
    Matrix acc = m;
    for (index_t k = 1; k < n; ++k) {
        Matrix next(d, std::vector<double>(d, 0.0));
        for (size_t i = 0; i < d; ++i) {
            for (size_t j = 0; j < d; ++j) {
                const double a = acc[i][j];
                if (a == 0.0) continue;
                for (size_t l = 0; l < d; ++l) next[i][l] += a * m[j][l];
            }
        }
        acc = std::move(next);
    }
    return acc;
}

namespace {

bool weighted_permutation(const Matrix& p);

} // namespace

double largest_singular_value(const Matrix& m, int iterations) {
    const size_t d = m.size();
    if (d == 0) return 0.0;
    if (weighted_permutation(m)) {
        // the Gram matrix is diagonal (column sumsq); power iteration can
        // stall on near-ties, the structural answer is exact
        double best = 0.0;
        for (size_t j = 0; j < d; ++j) {
            double s = 0.0;
            for (size_t i = 0; i < d; ++i) s += m[i][j] * m[i][j];
            best = std::max(best, s);
        }
        return std::sqrt(best);
    }
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(0.5, 1.5);
    std::vector<double> v(d);
    for (double& x : v) x = dist(rng);
    std::vector<double> av(d), atav(d);
    double sigma2 = 0.0;
    for (int it = 0; it < iterations; ++it) {
        for (size_t i = 0; i < d; ++i) {
            double s = 0.0;
            for (size_t j = 0; j < d; ++j) s += m[i][j] * v[j];
            av[i] = s;
        }
        for (size_t j = 0; j < d; ++j) {
            double s = 0.0;
            for (size_t i = 0; i < d; ++i) s += m[i][j] * av[i];
            atav[j] = s;
        }
        double nv = 0.0;
        for (double x : atav) nv += x * x;
        nv = std::sqrt(nv);
        if (nv == 0.0) return 0.0;
        const double prev = sigma2;
        sigma2 = nv; // Rayleigh estimate since v is unit
        for (size_t j = 0; j < d; ++j) v[j] = atav[j] / nv;
        if (it > 8 && std::fabs(sigma2 - prev) <= 1e-14 * sigma2) break;
    }
    return std::sqrt(sigma2);
}

namespace {

bool weighted_permutation(const Matrix& p) {
    const size_t d = p.size();
    std::vector<int> colhits(d, 0);
    for (size_t i = 0; i < d; ++i) {
        int rowhits = 0;
        for (size_t j = 0; j < d; ++j) {
            if (p[i][j] != 0.0) {
                ++rowhits;
                ++colhits[j];
            }
        }
        if (rowhits > 1) return false;
    }
    return std::all_of(colhits.begin(), colhits.end(), [](int c) { return c <= 1; });
}

} // namespace

double brute_norm(const DenseTruncation& trunc, index_t n, const Space& space) {
    const size_t d = trunc.atoms.size();
    if (static_cast<size_t>(n) >= d)
        throw BoundaryContamination("power order too large for the window");
    Matrix P = matrix_power(trunc.matrix, n);

    if (space.kind == SpaceKind::SupNorm) {
        double best = 0.0;
        for (const auto& row : P) {
            double s = 0.0;
            for (double x : row) s += std::fabs(x);
            best = std::max(best, s);
        }
        return best;
    }
    if (space.p == 1.0) {
        double best = 0.0;
        for (size_t j = 0; j < d; ++j) {
            double s = 0.0;
            for (size_t i = 0; i < d; ++i) s += std::fabs(P[i][j]);
            best = std::max(best, s);
        }
        return best;
    }
    const bool perm = weighted_permutation(P);
    if (space.p == 2.0) {
        const double sv = largest_singular_value(P);
        if (perm) {
            double best = 0.0;
            for (const auto& row : P)
                for (double x : row) best = std::max(best, std::fabs(x));
            if (std::fabs(best - sv) > 1e-9 * std::max(1.0, best))
                throw Error("matrix-entry and singular-value paths disagree");
            return best;
        }
        return sv;
    }
    if (!perm)
        throw ExactUnavailable("general p norm needs a weighted-permutation power");
    double best = 0.0;
    for (const auto& row : P)
        for (double x : row) best = std::max(best, std::fabs(x));
    return best;
}

index_t brute_count(const std::function<bool(index_t)>& predicate, index_t N) {
    index_t c = 0;
    for (index_t n = 1; n <= N; ++n)
        if (predicate(n)) ++c;
    return c;
}

} // namespace opchaos
