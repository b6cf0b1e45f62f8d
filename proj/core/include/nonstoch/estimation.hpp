#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "nonstoch/bits.hpp"
#include "nonstoch/channel.hpp"

namespace nonstoch {

/// Linear plant x(t+1) = A x(t) + v(t), y(t) = G x(t) + w(t), with the
/// initial state anywhere in the max-norm ball of radius init_radius and
/// disturbances bounded by disturbance_bound (0 means noiseless). (G, A)
/// must be observable. jordan_blocks declares the block-diagonal structure
/// of A (sizes, in order); a diagonal A defaults to all-1 blocks.
struct PlantModel {
  Eigen::MatrixXd A;
  Eigen::MatrixXd G;
  std::vector<std::complex<double>> eigenvalues;
  double init_radius = 1.0;
  double disturbance_bound = 0.0;
  std::vector<int> jordan_blocks;

  int dimension() const { return static_cast<int>(A.rows()); }
  double spectral_radius() const;
};

/// Validates shapes, eigenvalue data (read off exactly for triangular A,
/// otherwise computed with a residual check; supplied values are checked
/// against A), observability, and the declared block structure.
PlantModel make_plant(Eigen::MatrixXd A, Eigen::MatrixXd G,
                      std::optional<std::vector<std::complex<double>>>
                          eigenvalues = std::nullopt,
                      double init_radius = 1.0, double disturbance_bound = 0.0,
                      std::optional<std::vector<int>> jordan_blocks =
                          std::nullopt);

/// Sum of log2|lambda/rho| over eigenvalues with |lambda| >= rho, counting
/// multiplicity (complex pairs contribute twice). rho = 1 gives the plain
/// unstable-exponent sum.
Bits unstable_exponent(const std::vector<std::complex<double>>& eigenvalues,
                       double rho);

enum class Feasibility {
  /// Strictly below a certified lower bound on capacity: a coder-estimator
  /// achieving rho-exponential uniform convergence exists.
  kAchievable,
  /// Above the exact capacity (when known): no coder-estimator can achieve
  /// rho-exponential uniformly bounded errors.
  kNecessaryViolated,
  /// Equal to the best known bound; the theory is silent at equality.
  kBoundary,
  /// Above the certified lower bound with no exact capacity known.
  kUnknown,
};

struct FeasibilityVerdict {
  Feasibility kind = Feasibility::kUnknown;
  double h_rho_bits = 0.0;
  double bound_bits = 0.0;        // best known bound used for the verdict
  bool exact_capacity_used = false;
};

const char* to_string(Feasibility f);

FeasibilityVerdict feasibility_check(const PlantModel& plant, double rho,
                                     double c0_lower_bits,
                                     std::optional<double> c0_known_bits =
                                         std::nullopt);

/// A block coder-estimator: every tau plant steps one codeword from a
/// pairwise non-confusable codebook crosses the channel, carrying the cell
/// index of the current scaled-state uncertainty box quantized with
/// cells[i] cells on axis i. Decoding is exact for every channel policy.
struct CoderEstimator {
  unsigned tau = 1;
  std::vector<Value> codebook;   // sorted; tuples for tau >= 2
  double rate_bits = 0.0;        // log2 |codebook|
  std::vector<std::size_t> cells;  // per-axis cell counts, product <= |codebook|
  double rho = 1.0;
};

/// Smallest block length tau <= tau_max whose exact codebook both beats the
/// unstable exponent (log2|F| > tau * H_rho) and funds the per-axis cell
/// counts needed to shrink the uncertainty box every epoch. Throws
/// InfeasibleError when no tau works.
CoderEstimator build_coder_estimator(const PlantModel& plant,
                                     const Channel& channel, double rho,
                                     unsigned tau_max);

struct TraceRow {
  unsigned t = 0;
  Eigen::VectorXd state;
  Eigen::VectorXd estimate;
  double error = 0.0;         // max-norm of state - estimate
  double scaled_error = 0.0;  // rho^{-t} * error
};

struct Trace {
  std::vector<TraceRow> rows;
  /// Certified bound on |scaled state - box center| (max-norm) at the start
  /// of each epoch; rows.size() spans epochs 0..(rows.size()-1)/tau.
  std::vector<double> epoch_error_bound;
  /// Certified per-row bound on the scaled error.
  std::vector<double> row_error_bound;
  unsigned tau = 1;
};

/// Disturbance realization policy; every component is clamped to [-c, c].
struct ZeroNoise {};
struct MaxNoise {};  // +c on every component, every step
struct SeededUniformNoise {
  std::uint64_t seed = 0;
};
using NoiseCallback =
    std::function<Eigen::VectorXd(unsigned t, int dimension, double bound)>;
using NoisePolicy =
    std::variant<ZeroNoise, MaxNoise, SeededUniformNoise, NoiseCallback>;

/// Closed-loop run of the noiseless plant with the constructed coder.
/// The zero-error codebook decodes exactly under every channel policy, and
/// the certified epoch bound contracts geometrically once the coder was
/// built (an undersized codebook still runs; its box simply grows).
Trace simulate_noiseless(const PlantModel& plant, const CoderEstimator& coder,
                         const Channel& channel, const TransmitPolicy& policy,
                         const Eigen::VectorXd& x0, unsigned t_end);

/// Same loop with bounded process and measurement noise (rho must be 1).
/// Quantizer boxes are inflated every epoch by the reconstruction and
/// accumulated-noise bounds, so the true state never leaves the live box.
Trace simulate_disturbed(const PlantModel& plant, const CoderEstimator& coder,
                         const Channel& channel, const TransmitPolicy& policy,
                         const Eigen::VectorXd& x0, const NoisePolicy& noise,
                         unsigned t_end);

struct DisturbedErrorBound {
  /// Max-norm of the fixed point of the epoch box recursion.
  double box_fixed_point = 0.0;
  /// Steady-state bound on sup_t ||E(t)||: the fixed-point box pushed
  /// through the worst within-epoch amplification plus accumulated noise.
  double steady_sup = 0.0;
  /// Same bound including the transient from the initial box of radius l.
  double transient_sup = 0.0;
};

/// Analytic error bounds for simulate_disturbed, from the same box
/// recursion the simulator runs. Requires the coder to contract (cells
/// strictly beat the epoch growth); otherwise throws InfeasibleError naming
/// the critical disturbance bound (0: no c >= 0 admits boundedness).
DisturbedErrorBound disturbed_error_bound(const PlantModel& plant,
                                          const CoderEstimator& coder,
                                          double c, unsigned t_end);

/// Hypercuboid packing witness: per unstable axis, the number of separated
/// cells the initial ball splits into after tau steps at margin epsilon.
/// log2 of the total count lower-bounds the information any coder-estimator
/// achieving rho-exponentially bounded errors must extract.
struct WitnessPacking {
  double epsilon = 0.0;
  unsigned tau = 1;
  std::vector<unsigned long long> cell_counts;  // one per unstable axis
  unsigned long long total = 1;
  double bound_bits = 0.0;
  double radius = 1.0;
};

WitnessPacking necessity_witness(
    const std::vector<std::complex<double>>& eigenvalues, double rho,
    double epsilon, unsigned tau, double radius);

}  // namespace nonstoch
