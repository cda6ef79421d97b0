#pragma once

// Displacement map, the global-dynamics verdict, the limit-cycle locator and
// the large-slope limit of the rho-dependent factor.

#include <optional>
#include <string_view>

#include "hybridgas/flow.hpp"
#include "hybridgas/model.hpp"
#include "hybridgas/normal_form.hpp"
#include "hybridgas/spectral.hpp"

namespace hybridgas {

/// Delta(x) < 0  <=>  K x^r < C_star x^{1/s}.
struct DisplacementParams {
    double K;
    double C_star;
    double exp_left;   ///< r
    double exp_right;  ///< 1/s
    double log_K;
    double log_C_star;
    HalfReturnGains gains;
    /// Delta(x) = -alpha x^{1/s} + beta x^r
    double alpha;
    double beta;
};

/// Throws DomainError when there is no return map (capturing node or mixed
/// orientation).
DisplacementParams displacement_params(const NormalFormSystem& nf);

/// half_return_backward(x) - half_return_forward(x), x > 0.
double displacement(double x, const NormalFormSystem& nf);
double displacement(double x, const DisplacementParams& params);

double displacement_derivative(double x, const NormalFormSystem& nf);
double displacement_derivative(double x, const DisplacementParams& params);

/// First-return map on Sigma^2_rho predicted by the gains:
/// x -> outbound leg -> jump -> inbound leg -> jump.
double return_map(double x, const DisplacementParams& params, const JumpMap& jump);

enum class VerdictCase { GAS_NodeCase, GAS, GloballyUnstable, GlobalCenter, LimitCycle };
std::string_view to_string(VerdictCase v);

enum class CycleStability { Stable, Unstable };
std::string_view to_string(CycleStability s);

struct LimitCycle {
    double x0;
    double delta_prime;
    CycleStability stability;
};

struct StabilityVerdict {
    VerdictCase verdict;
    std::optional<LimitCycle> cycle;
    /// Present whenever a return map exists (every case but GAS_NodeCase).
    std::optional<DisplacementParams> params;
    /// |K - C_star| within 1e-6 relative but not a center.
    bool near_center = false;
    /// A node field that does not capture orbits ran one of the legs.
    bool node_transit = false;
    Orientation orientation;
    SpectralData plus;
    SpectralData minus;
    SideBehaviour plus_behaviour;
    SideBehaviour minus_behaviour;
};

/// Relative band used to call K = C_star a center.
inline constexpr double center_tolerance = 1e-12;
/// Relative band reported as near-center.
inline constexpr double near_center_band = 1e-6;

StabilityVerdict classify_system(const HybridSystemSpec& spec);
StabilityVerdict classify_system(const NormalFormSystem& nf);

/// |cos(mu- t-) - Phi- sin(mu- t-)| / |cos(mu+ t+) + Phi+ sin(mu+ t+)|^r, the only
/// rho-dependent factor of C_star for companion-form foci.
double rho_dependent_factor(double rho, double r, double lambda_p, double mu_p, double lambda_m,
                            double mu_m);

struct RhoInfinityRatio {
    enum class Kind { Zero, Infinity, Finite } kind;
    double value;  ///< meaningful for Finite only
};

/// Limit of rho_dependent_factor as rho -> infinity.
RhoInfinityRatio rho_infinity_ratio(double r, double lambda_p, double mu_p, double lambda_m,
                                    double mu_m);

}  // namespace hybridgas
