#include "cpc/calibration.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cpc {

double estimate_kappa(const ExperimentParams& params) {
    if (!(params.pair_rate_per_s_per_mw > 0.0) || !(params.input_flux_per_s > 0.0) ||
        !(params.arm_transmission_1 > 0.0) || !(params.arm_transmission_2 > 0.0))
        throw std::invalid_argument("estimate_kappa: inputs must be positive");
    if (params.arm_transmission_1 > 1.0 || params.arm_transmission_2 > 1.0)
        throw std::invalid_argument("estimate_kappa: transmissions must be <= 1");
    return std::sqrt(params.pair_rate_per_s_per_mw /
                     (params.input_flux_per_s * params.arm_transmission_1 *
                      params.arm_transmission_2));
}

double theta_at_power(double kappa, double power_mw) {
    if (!(kappa > 0.0) || power_mw < 0.0)
        throw std::invalid_argument("theta_at_power: inputs must be positive");
    return kappa * std::sqrt(power_mw);
}

double power_for_theta(double kappa, double theta) {
    if (!(kappa > 0.0) || theta < 0.0)
        throw std::invalid_argument("power_for_theta: inputs must be positive");
    const double root = theta / kappa;
    return root * root;
}

CalibrationReport calibrate(const ExperimentParams& params) {
    CalibrationReport report;
    report.kappa = estimate_kappa(params);
    report.theta_at_pump = theta_at_power(report.kappa, params.pump_power_mw);
    report.small_angle_ok = report.theta_at_pump <= 0.1;
    report.power_mw_for_half_pi = power_for_theta(report.kappa, std::numbers::pi / 2);
    report.power_mw_for_pi = power_for_theta(report.kappa, std::numbers::pi);
    return report;
}

}  // namespace cpc
