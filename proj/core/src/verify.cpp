#include "corrmetric/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "corrmetric/distance.hpp"
#include "corrmetric/errors.hpp"
#include "corrmetric/parallel.hpp"
#include "corrmetric/rng.hpp"

namespace corrmetric {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kPsdTolerance = 1e-10;

/// Multiples of `step` in [0, pi], with pi itself appended so both endpoints
/// are always present.
std::vector<double> closed_grid(double step) {
    std::vector<double> values;
    for (std::size_t i = 0;; ++i) {
        const double x = static_cast<double>(i) * step;
        if (x > kPi) break;
        values.push_back(x);
    }
    if (values.back() != kPi) values.push_back(kPi);
    return values;
}

struct PartialMax {
    double ratio = -1.0;  // sentinel: nothing evaluated yet
    AngleTriple argmax;
    std::uint64_t evaluated = 0;
    std::uint64_t skipped = 0;
};

/// Ties on the ratio resolve to the lexicographically smallest triple, which
/// keeps the reduction independent of chunking and thread count.
void fold_in(PartialMax& best, double ratio, const AngleTriple& t) {
    if (ratio > best.ratio || (ratio == best.ratio && t < best.argmax)) {
        best.ratio = ratio;
        best.argmax = t;
    }
}

RatioReport finish_report(const std::vector<PartialMax>& parts, const RelaxConfig& config) {
    PartialMax best;
    for (const PartialMax& p : parts) {
        best.evaluated += p.evaluated;
        best.skipped += p.skipped;
        if (p.ratio >= 0.0) fold_in(best, p.ratio, p.argmax);
    }
    RatioReport report;
    report.k_used = config.k;
    report.max_ratio = best.ratio < 0.0 ? 0.0 : best.ratio;
    report.argmax = best.ratio < 0.0 ? AngleTriple{} : best.argmax;
    report.samples_evaluated = best.evaluated;
    report.samples_skipped_degenerate = best.skipped;
    return report;
}

double unit_dot(const CenteredUnit& u, const CenteredUnit& v) {
    double dot = 0.0;
    const std::vector<double>& a = u.values();
    const std::vector<double>& b = v.values();
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    return dot;
}

double distance_from_dot(double dot) {
    double d = 1.0 - std::fabs(dot);
    if (d < 0.0) d = 0.0;
    if (d > 1.0) d = 1.0;
    return d;
}

double angle_from_dot(double dot) {
    return std::acos(std::clamp(dot, -1.0, 1.0));
}

}  // namespace

RatioReport sweep_grid(double step, const RelaxConfig& config) {
    if (!(step > 0.0 && step <= 1.0)) throw DomainError("step outside (0, 1]");
    const std::vector<double> grid = closed_grid(step);
    const std::size_t v = grid.size();
    std::vector<double> f(v);
    for (std::size_t i = 0; i < v; ++i) f[i] = f_gamma(grid[i]);

    const auto parts = map_chunks<PartialMax>(v * v, [&](std::size_t lo, std::size_t hi) {
        PartialMax pm;
        for (std::size_t ij = lo; ij < hi; ++ij) {
            const std::size_t i = ij / v;
            const std::size_t j = ij % v;
            const double denom = f[i] + f[j];
            for (std::size_t g = 0; g < v; ++g) {
                const AngleTriple t{grid[i], grid[j], grid[g]};
                if (!feasible(t)) continue;
                if (denom < config.denom_epsilon) {
                    ++pm.skipped;
                    continue;
                }
                ++pm.evaluated;
                fold_in(pm, f[g] / denom, t);
            }
        }
        return pm;
    });

    RatioReport report = finish_report(parts, config);
    report.parameters.mode = "grid";
    report.parameters.step = step;
    return report;
}

RatioReport sweep_random(std::uint64_t trials, std::size_t dimension,
                         std::uint64_t seed, const RelaxConfig& config) {
    if (dimension < 3) throw DomainError("dimension must be >= 3");
    if (trials == 0) throw DomainError("trials must be >= 1");
    // A normal draw costs two generator outputs (Box-Muller) and a trial
    // draws three vectors, so trial t starts at stream offset t*6*dimension.
    // That makes every trial addressable regardless of chunking.
    const std::uint64_t per_trial = 6 * static_cast<std::uint64_t>(dimension);

    const auto parts = map_chunks<PartialMax>(trials, [&](std::size_t lo, std::size_t hi) {
        PartialMax pm;
        SplitMix64 rng(seed);
        rng.discard(static_cast<std::uint64_t>(lo) * per_trial);
        std::vector<double> raw[3];
        for (auto& r : raw) r.resize(dimension);
        std::vector<CenteredUnit> units;
        units.reserve(3);
        for (std::size_t t = lo; t < hi; ++t) {
            for (auto& r : raw) {
                for (double& e : r) e = rng.next_normal();
            }
            units.clear();
            bool degenerate = false;
            for (const auto& r : raw) {
                try {
                    units.push_back(center_and_normalize(Sample(r)));
                } catch (const ZeroVarianceError&) {
                    degenerate = true;
                    break;
                }
            }
            if (degenerate) {
                ++pm.skipped;
                continue;
            }
            const double c_xy = unit_dot(units[0], units[1]);
            const double c_yz = unit_dot(units[1], units[2]);
            const double c_xz = unit_dot(units[0], units[2]);
            const double denom = distance_from_dot(c_xy) + distance_from_dot(c_yz);
            if (denom < config.denom_epsilon) {
                ++pm.skipped;
                continue;
            }
            ++pm.evaluated;
            const double ratio = distance_from_dot(c_xz) / denom;
            if (ratio >= pm.ratio) {
                fold_in(pm, ratio,
                        AngleTriple{angle_from_dot(c_xy), angle_from_dot(c_yz),
                                    angle_from_dot(c_xz)});
            }
        }
        return pm;
    });

    RatioReport report = finish_report(parts, config);
    report.parameters.mode = "random";
    report.parameters.trials = trials;
    report.parameters.seed = seed;
    report.parameters.dimension = dimension;
    report.generator_name = kGeneratorName;
    return report;
}

std::optional<double> ratio_vectors(const Sample& x, const Sample& y,
                                    const Sample& z, const RelaxConfig& config) {
    const CenteredUnit ux = center_and_normalize(x);
    const CenteredUnit uy = center_and_normalize(y);
    const CenteredUnit uz = center_and_normalize(z);
    const double denom = abs_corr_distance_unit(ux, uy) + abs_corr_distance_unit(uy, uz);
    if (denom < config.denom_epsilon) return std::nullopt;
    return abs_corr_distance_unit(ux, uz) / denom;
}

namespace {

/// One Jacobi rotation zeroing a[p][q] of a symmetric 3x3, accumulated into v.
void jacobi_rotate(double a[3][3], double v[3][3], int p, int q) {
    const double apq = a[p][q];
    if (apq == 0.0) return;
    const double phi = 0.5 * std::atan2(2.0 * apq, a[q][q] - a[p][p]);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double app = a[p][p];
    const double aqq = a[q][q];
    a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
    a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
    a[p][q] = a[q][p] = 0.0;
    const int r = 3 - p - q;
    const double arp = a[r][p];
    const double arq = a[r][q];
    a[r][p] = a[p][r] = c * arp - s * arq;
    a[r][q] = a[q][r] = s * arp + c * arq;
    for (int i = 0; i < 3; ++i) {
        const double vip = v[i][p];
        const double viq = v[i][q];
        v[i][p] = c * vip - s * viq;
        v[i][q] = s * vip + c * viq;
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric 3x3 matrix; eigenvectors
/// end up as the columns of v, eigenvalues in w (unordered). Destroys a.
void jacobi3(double a[3][3], double v[3][3], double w[3]) {
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) v[i][j] = i == j ? 1.0 : 0.0;
    }
    for (int sweep = 0; sweep < 50; ++sweep) {
        const double off = std::fabs(a[0][1]) + std::fabs(a[0][2]) + std::fabs(a[1][2]);
        if (off < 1e-15) break;
        jacobi_rotate(a, v, 0, 1);
        jacobi_rotate(a, v, 0, 2);
        jacobi_rotate(a, v, 1, 2);
    }
    for (int i = 0; i < 3; ++i) w[i] = a[i][i];
}

}  // namespace

Counterexample realize_angles(const AngleTriple& angles, std::size_t dimension) {
    if (dimension < 3) throw DomainError("dimension must be >= 3");
    if (!feasible(angles)) {
        throw InfeasibleError("angle triple is not realizable by unit vectors");
    }

    // Gram matrix of the target configuration, points ordered (x, y, z):
    // angle(x,y) = alpha, angle(y,z) = beta, angle(x,z) = gamma.
    const double ca = std::cos(angles.alpha);
    const double cb = std::cos(angles.beta);
    const double cg = std::cos(angles.gamma);
    double gram[3][3] = {{1.0, ca, cg}, {ca, 1.0, cb}, {cg, cb, 1.0}};
    double evec[3][3];
    double eval[3];
    jacobi3(gram, evec, eval);

    int order[3] = {0, 1, 2};
    std::sort(order, order + 3, [&](int a, int b) { return eval[a] > eval[b]; });
    for (int i = 0; i < 3; ++i) {
        if (eval[i] < -kPsdTolerance) {
            throw InfeasibleError("angle triple has no positive semidefinite Gram matrix");
        }
        if (eval[i] < 0.0) eval[i] = 0.0;
    }
    std::size_t rank = 0;
    while (rank < 3 && eval[order[rank]] > kPsdTolerance) ++rank;
    if (rank + 1 > dimension) {
        throw DimensionTooSmallError(
            "dimension " + std::to_string(dimension) + " too small: configuration has rank " +
            std::to_string(rank) + " and must fit inside the zero-mean hyperplane");
    }

    // Factor G = C C^T; row i of C holds the coordinates of point i over the
    // eigenbasis, truncated to the numerical rank.
    double coords[3][3] = {};
    for (int i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < rank; ++j) {
            coords[i][j] = std::sqrt(eval[order[j]]) * evec[i][order[j]];
        }
    }

    // Orthonormal zero-mean directions b_k = (1,..,1,-k,0,..,0)/sqrt(k(k+1)).
    std::vector<std::vector<double>> basis(rank);
    for (std::size_t k = 1; k <= rank; ++k) {
        std::vector<double> b(dimension, 0.0);
        const double scale = 1.0 / std::sqrt(static_cast<double>(k) * static_cast<double>(k + 1));
        for (std::size_t m = 0; m < k; ++m) b[m] = scale;
        b[k] = -static_cast<double>(k) * scale;
        basis[k - 1] = std::move(b);
    }

    const char* names[3] = {"x", "y", "z"};
    std::vector<CenteredUnit> out;
    out.reserve(3);
    for (int i = 0; i < 3; ++i) {
        std::vector<double> p(dimension, 0.0);
        for (std::size_t j = 0; j < rank; ++j) {
            for (std::size_t m = 0; m < dimension; ++m) p[m] += coords[i][j] * basis[j][m];
        }
        // remove the rounding residue before the strict constructor check
        double mean = 0.0;
        for (double e : p) mean += e;
        mean /= static_cast<double>(dimension);
        for (double& e : p) e -= mean;
        double sq = 0.0;
        for (double e : p) sq += e * e;
        const double norm = std::sqrt(sq);
        if (norm <= kZeroVarianceNorm) {
            throw InfeasibleError("realized vector collapsed to zero");
        }
        for (double& e : p) e /= norm;
        out.push_back(CenteredUnit::from_unit_vector(std::move(p), names[i]));
    }

    const RelaxConfig defaults;
    const double denom =
        abs_corr_distance_unit(out[0], out[1]) + abs_corr_distance_unit(out[1], out[2]);
    double ratio = 0.0;
    if (denom >= defaults.denom_epsilon) {
        ratio = abs_corr_distance_unit(out[0], out[2]) / denom;
    }
    return Counterexample{angles, out[0], out[1], out[2], ratio};
}

Counterexample find_counterexample(double k) {
    if (!(k > 0.0)) throw DomainError("k must be positive");
    if (k >= 2.0) throw DomainError("no counterexample exists (Theorem: K=2 is sharp)");
    // The family (a, a, 2a) attains ratio 1 + cos(a) > k whenever
    // cos(a) > k - 1; choosing cos(2a) = k - 1 sits at the midpoint of the
    // valid interval, safely away from the boundary where it gets tight.
    const double alpha = 0.5 * std::acos(std::max(k - 1.0, 0.0));
    Counterexample witness = realize_angles(AngleTriple{alpha, alpha, 2.0 * alpha}, 3);
    // For k within ~1e-10 of 2 the angles are so small that the realization
    // collapses to rank one and the witness would be vacuous; refuse rather
    // than return a non-witness.
    if (!(witness.ratio > k)) {
        throw Error("realized ratio did not exceed k; k is too close to 2 for "
                    "a floating point realization");
    }
    return witness;
}

PlanarReport planar_inequality_check(double step, const RelaxConfig& config,
                                     double tolerance) {
    if (!(step > 0.0 && step <= 0.05)) throw DomainError("step outside (0, 0.05]");
    const std::vector<double> grid = closed_grid(step);
    const std::size_t v = grid.size();
    std::vector<double> f(v);
    for (std::size_t i = 0; i < v; ++i) f[i] = f_gamma(grid[i]);

    struct PartialMin {
        double margin = std::numeric_limits<double>::infinity();
        double alpha = 0.0;
        double beta = 0.0;
    };
    const auto parts = map_chunks<PartialMin>(v * v, [&](std::size_t lo, std::size_t hi) {
        PartialMin pm;
        for (std::size_t ij = lo; ij < hi; ++ij) {
            const std::size_t i = ij / v;
            const std::size_t j = ij % v;
            const double g = config.k * (f[i] + f[j]);
            const double worst_f = f_gamma(fold_angle_sum(grid[i] + grid[j]));
            const double margin = g - worst_f;
            if (margin < pm.margin) {
                pm.margin = margin;
                pm.alpha = grid[i];
                pm.beta = grid[j];
            }
        }
        return pm;
    });

    PartialMin best;
    for (const PartialMin& p : parts) {
        if (p.margin < best.margin ||
            (p.margin == best.margin &&
             std::pair(p.alpha, p.beta) < std::pair(best.alpha, best.beta))) {
            best = p;
        }
    }
    PlanarReport report;
    report.points_checked = static_cast<std::uint64_t>(v) * v;
    report.min_margin = best.margin;
    report.worst_alpha = best.alpha;
    report.worst_beta = best.beta;
    report.passed = best.margin >= -tolerance;
    return report;
}

}  // namespace corrmetric
