#ifndef CORRMETRIC_ANGLES_HPP
#define CORRMETRIC_ANGLES_HPP

#include <compare>
#include <optional>

namespace corrmetric {

/// Pairwise angles of a vector triple (X, Y, Z), in radians:
/// alpha = angle(X,Y), beta = angle(Y,Z), gamma = angle(X,Z), each in [0, pi].
struct AngleTriple {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;

    auto operator<=>(const AngleTriple&) const = default;
};

/// Parameters of the relaxed triangle inequality d(x,z) <= K(d(x,y) + d(y,z)).
struct RelaxConfig {
    double k = 2.0;
    double denom_epsilon = 1e-12;  // smaller denominators make the ratio undefined
};

/// f(gamma) = 1 - |cos gamma| on [0, pi].
/// Implemented by folding gamma > pi/2 to pi - gamma first, which makes the
/// symmetry f(gamma) == f(pi - gamma) exact in floating point.
double f_gamma(double gamma);

/// g(alpha, beta) = K * (f(alpha) + f(beta)) on [0, pi]^2.
/// Symmetric in its arguments and under x -> pi - x in either argument, exactly.
double g_alpha_beta(double alpha, double beta, const RelaxConfig& cfg = {});

/// Maps s in [0, 2pi] to the angle in [0, pi] with the same value of 1 - |cos|.
double fold_angle_sum(double s);

/// True iff the triple is realizable as pairwise angles of three unit vectors
/// (dimension >= 3): |alpha - beta| <= gamma <= alpha + beta and
/// alpha + beta + gamma <= 2*pi. Throws DomainError for angles outside [0, pi].
bool feasible(const AngleTriple& t);

/// f(gamma) / (f(alpha) + f(beta)), or nullopt when the denominator is below
/// cfg.denom_epsilon. The constant K is factored out; callers compare the
/// ratio against K. Throws InfeasibleError for infeasible triples.
std::optional<double> ratio_angles(const AngleTriple& t, const RelaxConfig& cfg = {});

/// Ratio along the family alpha = beta, gamma = 2*alpha:
/// (1 - cos 2a) / (2 - 2 cos a), which equals 1 + cos a analytically and
/// approaches 2 as a -> 0. Domain: 0 < alpha <= pi/4.
double sharpness_ratio(double alpha);

}  // namespace corrmetric

#endif
