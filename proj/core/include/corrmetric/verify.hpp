#ifndef CORRMETRIC_VERIFY_HPP
#define CORRMETRIC_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "corrmetric/angles.hpp"
#include "corrmetric/types.hpp"

namespace corrmetric {

/// How the angle triples fed into a sweep were produced.
struct SweepParameters {
    std::string mode;           // "grid" or "random"
    double step = 0.0;          // grid spacing; 0 when mode == "random"
    std::uint64_t trials = 0;   // random trial count; 0 when mode == "grid"
    std::uint64_t seed = 0;     // RNG seed; 0 when mode == "grid"
    std::size_t dimension = 0;  // sample length for random sweeps; 0 for grid
};

/// Result of maximising the ratio d(x,z) / (d(x,y) + d(y,z)) over a family of
/// configurations. `max_ratio` stays 0 and `argmax` is all-zero if every
/// configuration was skipped as degenerate.
struct RatioReport {
    double k_used = 2.0;
    double max_ratio = 0.0;
    AngleTriple argmax{0.0, 0.0, 0.0};
    std::uint64_t samples_evaluated = 0;
    std::uint64_t samples_skipped_degenerate = 0;
    SweepParameters parameters;
    std::string generator_name;  // empty for deterministic sweeps
};

/// A concrete realisation of an angle triple as centered unit vectors,
/// together with the ratio d(x,z) / (d(x,y) + d(y,z)) it attains (0 when the
/// denominator is degenerate).
struct Counterexample {
    AngleTriple angles{0.0, 0.0, 0.0};
    CenteredUnit x;
    CenteredUnit y;
    CenteredUnit z;
    double ratio = 0.0;
};

/// Outcome of checking f(gamma) <= K (f(alpha) + f(beta)) over a feasibility
/// grid. `passed` means the margin never went negative beyond `tolerance`.
struct PlanarReport {
    bool passed = false;
    double min_margin = 0.0;
    double worst_alpha = 0.0;
    double worst_beta = 0.0;
    std::uint64_t points_checked = 0;
};

/// Sweeps the closed grid {0, step, 2*step, ...} ∩ [0, pi] in all three angle
/// coordinates, evaluating the ratio at every feasible triple. Ties on the
/// maximum resolve to the first triple in lexicographic (alpha, beta, gamma)
/// order. Requires 0 < step <= 1.
RatioReport sweep_grid(double step, const RelaxConfig& config = {});

/// Draws `trials` independent vector triples of length `dimension` with
/// standard normal entries (deterministic given `seed`), and evaluates the
/// ratio on each. Trial t uses a substream at offset t, so reports are
/// reproducible regardless of evaluation order. Requires dimension >= 3.
RatioReport sweep_random(std::uint64_t trials, std::size_t dimension,
                         std::uint64_t seed, const RelaxConfig& config = {});

/// Ratio d(x,z) / (d(x,y) + d(y,z)) for three raw samples, or nullopt when
/// the denominator is below config.denom_epsilon.
std::optional<double> ratio_vectors(const Sample& x, const Sample& y,
                                    const Sample& z, const RelaxConfig& config = {});

/// Embeds an angle triple as three centered unit vectors of length
/// `dimension` whose pairwise angles match (alpha, beta, gamma) to within
/// 1e-9, and fills in the achieved ratio. Throws InfeasibleError when no
/// such configuration exists and DimensionTooSmallError when `dimension`
/// cannot host it (the vectors live in the zero-mean hyperplane, so the
/// usable rank is dimension - 1). Requires dimension >= 3.
Counterexample realize_angles(const AngleTriple& angles, std::size_t dimension);

/// Produces a configuration violating d(x,z) <= k (d(x,y) + d(y,z)) from the
/// sharp family: alpha = acos(max(k - 1, 0)) / 2, triple (alpha, alpha,
/// 2*alpha), realized in R^3. The midpoint choice keeps the achieved ratio
/// 1 + cos(alpha) comfortably above k. Requires 0 < k < 2; throws
/// DomainError for k >= 2, where no counterexample exists.
Counterexample find_counterexample(double k);

/// Checks g(alpha, beta) - f(fold(alpha + beta)) >= -tolerance over the
/// closed grid {0, step, ...} ∪ {pi} squared, with K = config.k. The folded
/// sum is the hardest feasible gamma for each (alpha, beta), so a pass
/// certifies the full inequality on the grid. Requires 0 < step <= 0.05.
PlanarReport planar_inequality_check(double step, const RelaxConfig& config = {},
                                     double tolerance = 1e-12);

}  // namespace corrmetric

#endif
