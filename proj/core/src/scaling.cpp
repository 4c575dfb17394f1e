#include "qgtlab/scaling.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include <Eigen/Dense>

#include "qgtlab/errors.hpp"

namespace qgt {

double delta_Q(const ScalingInput& input) {
    return input.delta_mu + input.delta_nu - 2.0 * input.dynamical - input.dimension;
}

OffCriticalPrediction predicted_offcritical(const ScalingInput& input) {
    if (input.delta_lambda == 0.0)
        throw UndefinedExponent("off-critical exponent undefined for Delta_lambda = 0");
    OffCriticalPrediction prediction;
    prediction.exponent = delta_Q(input) / input.delta_lambda;
    prediction.divergent = prediction.exponent < 0.0;
    return prediction;
}

std::string to_string(Extensivity extensivity) {
    switch (extensivity) {
        case Extensivity::SuperExtensive: return "super-extensive";
        case Extensivity::Extensive: return "extensive";
        case Extensivity::SubExtensive: return "sub-extensive";
    }
    return "?";
}

CriticalFssPrediction predicted_critical_fss(const ScalingInput& input) {
    const double dq = delta_Q(input);
    CriticalFssPrediction prediction;
    prediction.q_exponent = -dq;
    prediction.classification = dq < 0.0   ? Extensivity::SuperExtensive
                                : dq > 0.0 ? Extensivity::SubExtensive
                                           : Extensivity::Extensive;
    const double delta_v = 0.5 * (input.delta_mu + input.delta_nu);
    prediction.superextensive_condition =
        input.dimension + 2.0 * input.dynamical - 2.0 * delta_v > 0.0;
    return prediction;
}

double K_of_lambda(double lambda) {
    if (lambda <= -1.0 || lambda > 1.0)
        throw OutOfDomain("K(lambda) is defined on (-1, 1]");
    return 0.5 * M_PI / (M_PI - std::acos(lambda));
}

std::string to_string(FitModel model) {
    switch (model) {
        case FitModel::Gapless: return "gapless";
        case FitModel::GaplessIrrelevant: return "gapless-irrelevant";
        case FitModel::Logarithmic: return "logarithmic";
        case FitModel::Massive: return "massive";
        case FitModel::Slope: return "slope";
    }
    return "?";
}

FitModel fit_model_from_string(const std::string& name) {
    if (name == "gapless") return FitModel::Gapless;
    if (name == "gapless-irrelevant" || name == "gapless_irrelevant")
        return FitModel::GaplessIrrelevant;
    if (name == "logarithmic" || name == "log") return FitModel::Logarithmic;
    if (name == "massive") return FitModel::Massive;
    if (name == "slope") return FitModel::Slope;
    throw BadData("unknown fit model '" + name + "'");
}

namespace {

std::vector<double> basis_row(FitModel model, const FitFixed& fixed, double size) {
    switch (model) {
        case FitModel::Gapless:
            return {1.0, 1.0 / size};
        case FitModel::GaplessIrrelevant: {
            if (!fixed.delta_v2) throw BadData("gapless-irrelevant needs delta_v2");
            return {1.0, 1.0 / size, std::pow(size, 3.0 - 2.0 * *fixed.delta_v2)};
        }
        case FitModel::Logarithmic:
            return {1.0, 1.0 / size, 1.0 / (size * std::log(size))};
        case FitModel::Massive: {
            if (!fixed.xi || *fixed.xi <= 0.0) throw BadData("massive model needs xi > 0");
            return {1.0, std::exp(-size / *fixed.xi) / std::sqrt(size)};
        }
        case FitModel::Slope:
            break;
    }
    throw BadData("fit_fss does not handle the slope model");
}

}  // namespace

double ScalingFit::evaluate(double size) const {
    const auto row = basis_row(model, fixed, size);
    double value = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) value += coefficients(c) * row[c];
    return value;
}

ScalingFit fit_fss(const std::vector<std::pair<double, double>>& data, FitModel model,
                   const FitFixed& fixed, double min_size) {
    std::vector<std::pair<double, double>> kept;
    for (const auto& point : data)
        if (point.first >= min_size) kept.push_back(point);

    const std::size_t n_coeff = basis_row(model, fixed, 2.0).size();
    if (kept.size() < n_coeff + 1)
        throw BadData("need more data points than fit coefficients");

    Eigen::MatrixXd design(kept.size(), n_coeff);
    Eigen::VectorXd values(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const auto row = basis_row(model, fixed, kept[i].first);
        for (std::size_t c = 0; c < n_coeff; ++c) design(i, c) = row[c];
        values(i) = kept[i].second;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double sigma_max = svd.singularValues()(0);
    const double sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
    const double condition = sigma_min > 0.0 ? sigma_max / sigma_min
                                             : std::numeric_limits<double>::infinity();
    if (!(sigma_min > sigma_max * 1e-13))
        throw IllConditionedFit("rank-deficient design matrix", condition);

    ScalingFit fit;
    fit.model = model;
    fit.fixed = fixed;
    fit.min_size = min_size;
    fit.coefficients = svd.solve(values);
    fit.residuals = values - design * fit.coefficients;
    fit.rss = fit.residuals.squaredNorm();
    const double mean = values.mean();
    const double tss = (values.array() - mean).square().sum();
    fit.r_squared = tss > 0.0 ? 1.0 - fit.rss / tss : (fit.rss == 0.0 ? 1.0 : 0.0);
    fit.condition_number = condition;
    fit.sizes.reserve(kept.size());
    for (const auto& point : kept) fit.sizes.push_back(point.first);
    return fit;
}

SlopeFit extract_slope(const std::vector<std::pair<double, double>>& data) {
    if (data.size() < 3) throw BadData("slope extraction needs at least three points");
    const auto n = static_cast<Eigen::Index>(data.size());
    Eigen::VectorXd x(n), y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (data[i].second <= 0.0)
            throw BadData("slope extraction needs strictly positive values");
        x(i) = std::log(data[i].first);
        y(i) = std::log(data[i].second);
    }
    const double xm = x.mean(), ym = y.mean();
    const double sxx = (x.array() - xm).square().sum();
    if (sxx == 0.0) throw BadData("slope extraction needs distinct sizes");
    const double sxy = ((x.array() - xm) * (y.array() - ym)).sum();

    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = ym - fit.slope * xm;
    const Eigen::ArrayXd residual = y.array() - fit.intercept - fit.slope * x.array();
    fit.rss = residual.square().sum();
    const double tss = (y.array() - ym).square().sum();
    fit.r_squared = tss > 0.0 ? 1.0 - fit.rss / tss : 1.0;
    fit.stderr_slope = std::sqrt(fit.rss / static_cast<double>(n - 2) / sxx);
    return fit;
}

}  // namespace qgt
