#pragma once

namespace cpc {

// Measured inputs for estimating the interaction strength. The arm figures
// are end-to-end transmissions of the two analysis arms (detected photon
// fraction), not loss fractions.
struct ExperimentParams {
    double pair_rate_per_s_per_mw = 0.0;  // detected pairs/s per mW of pump
    double input_flux_per_s = 0.0;        // photons/s entering the source mode
    double arm_transmission_1 = 1.0;
    double arm_transmission_2 = 1.0;
    double pump_power_mw = 1.0;
};

// kappa = theta per sqrt(mW), from
//   detected rate = flux * T1 * T2 * sin^2(kappa*sqrt(P)) ~ flux*T1*T2*kappa^2*P
// in the small-angle regime. Throws std::invalid_argument on non-positive
// inputs or transmissions above 1.
double estimate_kappa(const ExperimentParams& params);

// theta = kappa * sqrt(P);  P = (theta/kappa)^2 in mW.
double theta_at_power(double kappa, double power_mw);
double power_for_theta(double kappa, double theta);

struct CalibrationReport {
    double kappa = 0.0;           // theta per sqrt(mW)
    double theta_at_pump = 0.0;   // theta at the supplied pump power
    bool small_angle_ok = true;   // false when theta at pump exceeds 0.1 rad
    double power_mw_for_half_pi = 0.0;
    double power_mw_for_pi = 0.0;
    // Interpretation recorded with every report.
    static constexpr const char* kTransmissionNote =
        "arm figures interpreted as end-to-end transmissions, not loss fractions";
};

CalibrationReport calibrate(const ExperimentParams& params);

}  // namespace cpc
