#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace qgt {

// Correlation length of the lambda = 2 massive phase (source truncates the digits).
inline constexpr double kXiLambda2 = 8.35;

struct ScalingInput {
    double dimension = 1.0;     // spatial dimension d
    double dynamical = 1.0;     // dynamical exponent zeta
    double delta_mu = 0.0;      // scaling dimension of V_mu
    double delta_nu = 0.0;      // scaling dimension of V_nu
    double delta_lambda = 1.0;  // scaling dimension of the driving parameter (1/nu)
};

// Delta_Q = Delta_mu + Delta_nu - 2 zeta - d.
double delta_Q(const ScalingInput& input);

struct OffCriticalPrediction {
    double exponent = 0.0;  // q_sing ~ |lambda - lambda_c|^exponent
    bool divergent = false;
};

// Off-critical singular exponent Delta_Q / Delta_lambda. Throws UndefinedExponent
// when Delta_lambda = 0.
OffCriticalPrediction predicted_offcritical(const ScalingInput& input);

enum class Extensivity { SuperExtensive, Extensive, SubExtensive };

std::string to_string(Extensivity extensivity);

struct CriticalFssPrediction {
    double q_exponent = 0.0;  // q_sing ~ L^(-Delta_Q), i.e. exponent = -Delta_Q
    Extensivity classification = Extensivity::Extensive;
    bool superextensive_condition = false;  // d + 2 zeta - 2 Delta_V > 0
};

CriticalFssPrediction predicted_critical_fss(const ScalingInput& input);

// Luttinger parameter K(lambda) = (pi/2) / (pi - arccos lambda) on (-1, 1];
// the cosine operator's dimension is 4K. Throws OutOfDomain outside the interval.
double K_of_lambda(double lambda);

enum class FitModel { Gapless, GaplessIrrelevant, Logarithmic, Massive, Slope };

std::string to_string(FitModel model);
FitModel fit_model_from_string(const std::string& name);

struct FitFixed {
    std::optional<double> delta_v2;  // irrelevant-operator dimension (4K)
    std::optional<double> xi;        // correlation length for the massive model
};

struct ScalingFit {
    FitModel model = FitModel::Gapless;
    Eigen::VectorXd coefficients;  // A1, A2 [, A3]
    FitFixed fixed;
    double rss = 0.0;
    double r_squared = 0.0;
    double condition_number = 0.0;
    Eigen::VectorXd residuals;
    std::vector<double> sizes;  // L values used, after the min-size filter
    double min_size = 0.0;

    // Fitted curve value at size L.
    double evaluate(double size) const;
};

// Linear least squares for the finite-size models
//   gapless             q = A1 + A2 / L
//   gapless-irrelevant  q = A1 + A2 / L + A3 L^(3 - 2 delta_v2)
//   logarithmic         q = A1 + A2 / L + A3 / (L log L)
//   massive             q = A1 + A2 exp(-L / xi) / sqrt(L)
// Points with L < min_size are dropped first. Throws BadData when fewer points
// than coefficients + 1 remain, IllConditionedFit when the design matrix is
// numerically rank deficient.
ScalingFit fit_fss(const std::vector<std::pair<double, double>>& data, FitModel model,
                   const FitFixed& fixed = {}, double min_size = 0.0);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double rss = 0.0;
    double r_squared = 0.0;
};

// Least-squares slope of log Q against log L. Requires >= 3 points, all Q > 0.
SlopeFit extract_slope(const std::vector<std::pair<double, double>>& data);

}  // namespace qgt
