#pragma once

// Hardy-number estimates from level-set profiles, weighted Bergman membership
// by exponent comparison, the divergence classifier for the full level set
// and the comb counter-example.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/canonical.hpp"
#include "hardy/geometry.hpp"
#include "hardy/profile.hpp"

namespace hardy {

struct AnalysisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EstimatorTag { omega_star, delta_star, lambda_star, omega_full, d_bracket };

std::string tag_name(EstimatorTag tag);
EstimatorTag parse_tag(const std::string& name);

struct HardyOptions {
  int window = 6;             // radii per least-squares window
  double tail_fraction = 0.5;  // trailing share of windows forming the tail
  double slope_cap = 50.0;     // every tail slope above this reads as +inf
  int min_radii = 8;
};

struct WindowSlope {
  double r_min = 0.0;
  double r_max = 0.0;
  double slope = 0.0;
  double std_err = 0.0;
};

struct HardyEstimate {
  EstimatorTag tag = EstimatorTag::omega_star;
  double h_est = 0.0;  // +inf when the level sets empty out or slopes exceed the cap
  // Interval consistent with the estimate; only wider than a point for the
  // d-bracket, where it is [slope/2, 2 slope].
  double h_low = 0.0;
  double h_high = 0.0;
  std::vector<WindowSlope> window_slopes;
  double tail_r_min = 0.0;
  double tail_r_max = 0.0;
  double std_err = 0.0;     // standard error of the minimising window slope
  double half_width = 0.0;  // default decision margin max(0.1, 2 std_err)
  bool low_confidence = false;
  std::string note;
};

HardyEstimate hardy_number_estimate(const LevelSetProfile& p, EstimatorTag tag, const HardyOptions& opt = {});

enum class Verdict { member, non_member, undecided };
std::string verdict_name(Verdict v);

struct MembershipDecision {
  double p = 0.0;
  double alpha = 0.0;
  double ratio = 0.0;  // p / (alpha + 2)
  double h_est = 0.0;
  Verdict verdict = Verdict::undecided;
  double margin = 0.0;
  bool near_boundary = false;  // ratio within two margins of h_est
};

/// alpha = -1 is the Hardy space. margin defaults to the estimate's half width.
MembershipDecision bergman_membership(const HardyEstimate& h, double p, double alpha,
                                      std::optional<double> margin = std::nullopt);

enum class IntegralVerdict { diverges, converges, undecided };
std::string integral_verdict_name(IntegralVerdict v);

struct QuestionOptions {
  HardyOptions fit;
  double bound_tol = 0.05;  // slack on delta_full <= log r / (2 pi)
};

struct QuestionResult {
  IntegralVerdict verdict = IntegralVerdict::undecided;
  double beta = 0.0;  // tail slope of pi delta_full against log r
  double beta_lower = 0.0;
  double beta_upper = 0.0;
  bool log_bound_holds = false;
  double max_bound_excess = 0.0;  // max over radii of delta_full - log r / (2 pi)
  int radii_used = 0;
};

/// Decides whether the integral of r^{p-1} exp(-pi (alpha+2) delta_full(r))
/// over r > 0 is finite, from the tail growth of delta_full.
QuestionResult question_integral_classifier(const LevelSetProfile& prof, double p, double alpha,
                                            const QuestionOptions& opt = {});

/// The comb with base point 0.
Domain comb_domain(double c, int levels, double r_max);

struct CounterexampleConfig {
  ProfileConfig profile;  // with_delta_full is forced on
  double r0 = 10.0;
  double q = 1.4;
  int count = 12;
  double r_max = 1e4;            // comb truncation
  double h_threshold = 5.0;      // h_est above this stands in for h = inf
  QuestionOptions question;
};

struct CounterexampleReport {
  double c = 0.0;
  int levels = 0;
  double p = 0.0;
  double alpha = 0.0;
  bool divergence_premise = false;  // p >= alpha/2 + 1
  LevelSetProfile profile;
  // (a) delta_full <= log r / (2 pi) + tol on every valid radius
  bool bound_ok = false;
  int bound_radii = 0;
  double max_bound_excess = 0.0;
  // (b) omega_star-based Hardy number above the threshold
  HardyEstimate h_star;
  bool h_ok = false;
  // (c) classifier verdict
  QuestionResult question;
  bool diverges_ok = false;

  bool passed() const { return bound_ok && h_ok && diverges_ok; }
};

CounterexampleReport verify_counterexample(double c, int levels, double p, double alpha, const CanonicalTables& tables,
                                           const CounterexampleConfig& cfg);
CounterexampleReport verify_counterexample(const Domain& d, double p, double alpha, const CanonicalTables& tables,
                                           const CounterexampleConfig& cfg);

/// pi over the widest arc of D on |z| = r, for domains star-shaped about 0.
double starlike_hardy_oracle(const Domain& d, double r);

}  // namespace hardy
