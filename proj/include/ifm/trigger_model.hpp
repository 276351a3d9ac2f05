// trigger_model.hpp
// The bomb trigger as a quantum measuring device: a minimum-uncertainty
// Gaussian wave packet of known position spread whose momentum is read
// against a threshold after the probe. hbar = 1, so momenta carry units
// of 1/length and every sensitivity statement reduces to a dimensionless
// product q * delta_x.

#pragma once

namespace ifm {

// Localizing the trigger to delta_x forces a Gaussian momentum spread
// sigma_p = 1/(2 delta_x) (the Heisenberg minimum); delta_p = 1/delta_x
// = 2 sigma_p is the order-of-magnitude spread quoted in uncertainty
// arguments. p_th is the momentum reading above which the bomb fires.
struct BombTrigger {
  double delta_x;   // position uncertainty, > 0
  double sigma_p;   // exact Gaussian std dev, 1/(2 delta_x)
  double delta_p;   // uncertainty-scale spread, 1/delta_x
  double p_th;      // trigger threshold, >= 0

  BombTrigger(double delta_x, double p_th);
};

// Threshold-test quality for one kick size. false_trigger and miss are
// evaluated at the configured p_th; min_error is the best achievable
// equal-prior error over all thresholds, Phi(-q / (2 sigma_p)), and never
// exceeds (false_trigger + miss) / 2.
struct DiscriminationReport {
  double false_trigger;  // P(fire | no kick), one-sided at p_th
  double miss;           // P(silent | kick q), one-sided at p_th
  double min_error;
};

// Standard normal distribution function, via erfc.
double normal_cdf(double x);

// P(|p| > p_th) for p ~ N(0, sigma_p^2): the rate at which vacuum
// fluctuations alone fire the trigger. Two-sided because the no-kick case
// has no preferred direction.
double false_trigger_probability(const BombTrigger& trigger);

// One-sided threshold test between p ~ N(0, sigma^2) (no kick) and
// p ~ N(q, sigma^2) (kick along the known probe axis). Throws for q < 0.
DiscriminationReport kick_discrimination(const BombTrigger& trigger, double q);

// min_error alone: Phi(-q / (2 sigma_p)).
double min_discrimination_error(const BombTrigger& trigger, double q);

// Smallest q whose minimum discrimination error is <= error_budget, found
// by bisection to 1e-12 relative width. Scale covariance: the returned
// q times delta_x depends only on the budget. Throws unless
// 0 < error_budget < 0.5.
double minimum_detectable_kick(const BombTrigger& trigger, double error_budget);

}  // namespace ifm
