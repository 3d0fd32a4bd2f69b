#include "corrmetric/angles.hpp"

#include <cmath>

#include "corrmetric/errors.hpp"

namespace corrmetric {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kHalfPi = 1.5707963267948966;
constexpr double kTwoPi = 2.0 * kPi;

void require_angle(double x) {
    if (!(x >= 0.0 && x <= kPi)) throw DomainError("angle outside [0, pi]");
}

}  // namespace

double f_gamma(double gamma) {
    require_angle(gamma);
    // Fold onto [0, pi/2]. For gamma in (pi/2, pi] the subtraction pi - gamma
    // is exact (Sterbenz), so f(gamma) == f(pi - gamma) holds bit for bit.
    const double t = gamma > kHalfPi ? kPi - gamma : gamma;
    return 1.0 - std::cos(t);
}

double g_alpha_beta(double alpha, double beta, const RelaxConfig& cfg) {
    return cfg.k * (f_gamma(alpha) + f_gamma(beta));
}

double fold_angle_sum(double s) {
    if (!(s >= 0.0 && s <= kTwoPi)) throw DomainError("angle sum outside [0, 2*pi]");
    // For s in (pi, 2*pi] the subtraction is again exact by Sterbenz, so the
    // folded value lands exactly in [0, pi].
    return s <= kPi ? s : kTwoPi - s;
}

bool feasible(const AngleTriple& t) {
    require_angle(t.alpha);
    require_angle(t.beta);
    require_angle(t.gamma);
    const double lo = std::fabs(t.alpha - t.beta);
    const double hi = t.alpha + t.beta;
    return lo <= t.gamma && t.gamma <= hi && hi + t.gamma <= kTwoPi;
}

std::optional<double> ratio_angles(const AngleTriple& t, const RelaxConfig& cfg) {
    if (!feasible(t)) {
        throw InfeasibleError("angle triple is not realizable by unit vectors");
    }
    const double denom = f_gamma(t.alpha) + f_gamma(t.beta);
    if (denom < cfg.denom_epsilon) return std::nullopt;
    return f_gamma(t.gamma) / denom;
}

double sharpness_ratio(double alpha) {
    if (!(alpha > 0.0 && alpha <= kPi / 4.0)) {
        throw DomainError("alpha outside (0, pi/4]");
    }
    // The family ratio (1 - cos 2a) / (2 - 2 cos a), with both numerator and
    // denominator rewritten through 1 - cos x = 2 sin^2(x/2). The direct form
    // loses all significant digits for small a and can land at or above the
    // limit 2; this form stays strictly below it.
    const double s = std::sin(alpha);
    const double h = std::sin(0.5 * alpha);
    return (s * s) / (2.0 * (h * h));
}

}  // namespace corrmetric
