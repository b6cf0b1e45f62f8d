#include "nonstoch/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "nonstoch/errors.hpp"

namespace nonstoch {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd matrix_power(const MatrixXd& m, unsigned r) {
  MatrixXd out = MatrixXd::Identity(m.rows(), m.cols());
  for (unsigned i = 0; i < r; ++i) out = out * m;
  return out;
}

bool exactly_diagonal(const MatrixXd& a) {
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (i != j && a(i, j) != 0.0) return false;
    }
  }
  return true;
}

bool exactly_triangular(const MatrixXd& a) {
  bool upper = true, lower = true;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (i > j && a(i, j) != 0.0) upper = false;
      if (i < j && a(i, j) != 0.0) lower = false;
    }
  }
  return upper || lower;
}

void sort_eigenvalues(std::vector<std::complex<double>>& eigs) {
  std::sort(eigs.begin(), eigs.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              const double ma = std::abs(a), mb = std::abs(b);
              if (ma != mb) return ma > mb;
              if (a.real() != b.real()) return a.real() > b.real();
              return a.imag() > b.imag();
            });
}

/// Observability matrix [G; GA; ...; GA^{n-1}].
MatrixXd observability_matrix(const MatrixXd& a, const MatrixXd& g) {
  const int n = static_cast<int>(a.rows());
  const int p = static_cast<int>(g.rows());
  MatrixXd o(p * n, n);
  MatrixXd gai = g;
  for (int i = 0; i < n; ++i) {
    o.middleRows(i * p, p) = gai;
    gai = gai * a;
  }
  return o;
}

/// Componentwise bound on the reconstruction error of x(t) from the last n
/// outputs when process and measurement noise are bounded by c. Zero when
/// c == 0 (the stacked solve is then exact).
VectorXd reconstruction_noise_bound(const PlantModel& plant, double c) {
  const int n = plant.dimension();
  const int p = static_cast<int>(plant.G.rows());
  if (c == 0.0) return VectorXd::Zero(n);

  const MatrixXd o = observability_matrix(plant.A, plant.G);
  const MatrixXd pinv = o.completeOrthogonalDecomposition().pseudoInverse();

  // Per-row deviation of the stacked outputs from G A^i x(t-n+1): the
  // measurement noise plus the process noise injected inside the window.
  VectorXd stack_bound(p * n);
  for (int i = 0; i < n; ++i) {
    VectorXd row = VectorXd::Constant(p, c);
    for (int j = 0; j < i; ++j) {
      row += (plant.G * matrix_power(plant.A, i - 1 - j)).cwiseAbs() *
             VectorXd::Constant(n, c);
    }
    stack_bound.segment(i * p, p) = row;
  }
  VectorXd err_t1 = pinv.cwiseAbs() * stack_bound;

  // Roll the window estimate forward to time t; the process noise inside
  // the roll is unknown to the encoder and adds its own bound.
  VectorXd err_t = matrix_power(plant.A, n - 1).cwiseAbs() * err_t1;
  for (int j = 0; j < n - 1; ++j) {
    err_t += matrix_power(plant.A, n - 2 - j).cwiseAbs() *
             VectorXd::Constant(n, c);
  }
  return err_t;
}

/// Componentwise bound on sum_{i<r} A^{r-1-i} V(.) with ||V|| <= c.
VectorXd accumulated_noise_bound(const MatrixXd& a, double c, unsigned r) {
  const int n = static_cast<int>(a.rows());
  VectorXd out = VectorXd::Zero(n);
  for (unsigned j = 0; j < r; ++j)
    out += matrix_power(a, j).cwiseAbs() * VectorXd::Constant(n, c);
  return out;
}

Value symbol_at(const Value& codeword, unsigned i, unsigned tau) {
  if (tau == 1) return codeword;
  return codeword.tuple()[i];
}

void validate_coder(const PlantModel& plant, const CoderEstimator& coder,
                    const Channel& channel) {
  const int n = plant.dimension();
  if (coder.tau < 1) throw InvalidArgument("coder needs tau >= 1");
  if (coder.codebook.empty()) throw InvalidArgument("empty codebook");
  if (coder.cells.size() != static_cast<std::size_t>(n))
    throw InvalidArgument("cell counts do not match the plant dimension");
  unsigned long long total = 1;
  for (std::size_t k : coder.cells) {
    if (k < 1) throw InvalidArgument("cell counts must be >= 1");
    if (total > coder.codebook.size() / k) {
      total = coder.codebook.size() + 1;
      break;
    }
    total *= k;
  }
  if (total > coder.codebook.size())
    throw InvalidArgument("cell grid larger than the codebook");

  for (const Value& f : coder.codebook) {
    if (coder.tau >= 2 && (!f.is_tuple() || f.tuple().size() != coder.tau))
      throw InvalidArgument("codeword is not a tau-tuple: " + f.str());
    for (unsigned i = 0; i < coder.tau; ++i)
      channel.transition(symbol_at(f, i, coder.tau));  // throws if unknown
  }
  // Pairwise non-confusable: some position must separate every pair.
  for (std::size_t a = 0; a < coder.codebook.size(); ++a) {
    for (std::size_t b = a + 1; b < coder.codebook.size(); ++b) {
      bool separated = false;
      for (unsigned i = 0; i < coder.tau && !separated; ++i) {
        const ValueSet& ta =
            channel.transition(symbol_at(coder.codebook[a], i, coder.tau));
        const ValueSet& tb =
            channel.transition(symbol_at(coder.codebook[b], i, coder.tau));
        separated = std::none_of(ta.begin(), ta.end(), [&](const Value& y) {
          return tb.count(y) != 0;
        });
      }
      if (!separated)
        throw InvalidArgument("codebook is not zero-error: codewords " +
                              coder.codebook[a].str() + " and " +
                              coder.codebook[b].str() + " are confusable");
    }
  }
}

struct NoiseSource {
  const NoisePolicy& policy;
  double bound;
  std::mt19937_64 rng;

  NoiseSource(const NoisePolicy& p, double c) : policy(p), bound(c) {
    if (const auto* seeded = std::get_if<SeededUniformNoise>(&policy))
      rng.seed(seeded->seed);
  }

  VectorXd draw(unsigned t, int dim) {
    if (bound == 0.0 || std::holds_alternative<ZeroNoise>(policy))
      return VectorXd::Zero(dim);
    if (std::holds_alternative<MaxNoise>(policy))
      return VectorXd::Constant(dim, bound);
    if (std::holds_alternative<SeededUniformNoise>(policy)) {
      VectorXd out(dim);
      for (int i = 0; i < dim; ++i) {
        const double u =
            static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
        out[i] = (2.0 * u - 1.0) * bound;
      }
      return out;
    }
    VectorXd out = std::get<NoiseCallback>(policy)(t, dim, bound);
    if (out.size() != dim)
      throw InvalidArgument("noise callback returned the wrong dimension");
    return out.cwiseMax(-bound).cwiseMin(bound);
  }
};

std::size_t quantize_axis(double p, double lo, double width, std::size_t k) {
  if (width <= 0.0 || k == 1) return 0;
  const double raw = std::floor((p - lo) / width);
  if (raw < 0.0) return 0;
  if (raw >= static_cast<double>(k)) return k - 1;
  return static_cast<std::size_t>(raw);
}

// The loop runs in relative coordinates: z is the scaled offset between the
// true state and the live box center at the current epoch start. Everything
// the coder touches (quantization, refinement, propagation) is O(box) sized,
// so the arithmetic stays well conditioned even when the absolute state has
// grown past the resolution of a double. The absolute state is carried
// separately for the trace columns only.
Trace run_simulation(const PlantModel& plant, const CoderEstimator& coder,
                     const Channel& channel, const TransmitPolicy& policy,
                     const VectorXd& x0, const NoisePolicy& noise, double c,
                     unsigned t_end) {
  const int n = plant.dimension();
  const int p = static_cast<int>(plant.G.rows());
  validate_coder(plant, coder, channel);
  if (x0.size() != n) throw InvalidArgument("x0 dimension mismatch");
  if (x0.lpNorm<Eigen::Infinity>() > plant.init_radius)
    throw InvalidArgument("x0 lies outside the initial-state ball");

  const unsigned tau = coder.tau;
  const double rho = coder.rho;
  const MatrixXd scaled_a = plant.A / rho;
  const MatrixXd m = matrix_power(scaled_a, tau);
  const MatrixXd m_abs = m.cwiseAbs();
  std::vector<MatrixXd> a_pow(tau), scaled_pow(tau);
  for (unsigned r = 0; r < tau; ++r) {
    a_pow[r] = matrix_power(plant.A, r);
    scaled_pow[r] = matrix_power(scaled_a, r);
  }
  const VectorXd w_rec = reconstruction_noise_bound(plant, c);
  const VectorXd v_acc = accumulated_noise_bound(plant.A, c, tau);
  std::vector<VectorXd> acc_bound(tau);
  for (unsigned r = 0; r < tau; ++r)
    acc_bound[r] = accumulated_noise_bound(plant.A, c, r);

  const MatrixXd obs = observability_matrix(plant.A, plant.G);
  const MatrixXd obs_pinv = obs.completeOrthogonalDecomposition().pseudoInverse();
  const MatrixXd roll = matrix_power(plant.A, n - 1);

  Transmitter tx(channel, policy);
  NoiseSource noise_source(noise, c);

  VectorXd x_abs = x0;                                 // display only
  VectorXd z = x0;                                     // x'(0) - 0
  VectorXd h = VectorXd::Constant(n, plant.init_radius);
  std::vector<VectorXd> v_hist, w_hist;                // realized noise
  v_hist.reserve(t_end + 1);
  w_hist.reserve(t_end + 1);

  // x~(t0) - x(t0): the reconstruction error realized by the noise in the
  // observation window, assembled from the same linear relations the
  // stacked solve inverts.
  auto reconstruction_offset = [&](unsigned t0) {
    if (c == 0.0) return VectorXd(VectorXd::Zero(n));
    const unsigned t1 = t0 - static_cast<unsigned>(n) + 1;
    VectorXd eta(p * n);
    for (int i = 0; i < n; ++i) {
      VectorXd deviation = w_hist[t1 + i];
      for (int j = 0; j < i; ++j)
        deviation += plant.G * (matrix_power(plant.A, i - 1 - j) * v_hist[t1 + j]);
      eta.segment(i * p, p) = deviation;
    }
    VectorXd offset = roll * (obs_pinv * eta);
    for (int j = 0; j + 1 < n; ++j)
      offset -= matrix_power(plant.A, n - 2 - j) * v_hist[t1 + j];
    return offset;
  };

  Trace trace;
  trace.tau = tau;
  trace.rows.reserve(t_end + 1);

  Value codeword = coder.codebook.front();
  std::size_t encoded_flat = 0;
  bool idle_epoch = true;
  std::vector<Value> received;
  unsigned epoch_start = 0;

  for (unsigned t = 0; t <= t_end; ++t) {
    w_hist.push_back(noise_source.draw(t, p));
    const unsigned r = t % tau;

    if (r == 0) {
      epoch_start = t;
      trace.epoch_error_bound.push_back(h.lpNorm<Eigen::Infinity>());
      idle_epoch = t + 1 < static_cast<unsigned>(n);
      received.clear();
      // In exact arithmetic the offset never leaves the certified box; pull
      // rounding dust back inside before it can be amplified by the epoch
      // map (an offset parked exactly on the box edge would otherwise drift
      // out geometrically). The check threshold is far above rounding scale,
      // so genuine contract violations still surface.
      for (int i = 0; i < n; ++i) {
        if (std::abs(z[i]) > h[i] * (1.0 + 1e-6) + 1e-9)
          throw InternalError("state left the certified uncertainty box");
        z[i] = std::clamp(z[i], -h[i], h[i]);
      }
      if (!idle_epoch) {
        // Scaled measured offset from the box center (rho = 1 whenever the
        // reconstruction offset is nonzero).
        const VectorXd q = z + reconstruction_offset(t);
        encoded_flat = 0;
        for (int i = 0; i < n; ++i) {
          const double half = h[i] + w_rec[i];
          const double width = 2.0 * half / static_cast<double>(coder.cells[i]);
          encoded_flat = encoded_flat * coder.cells[i] +
                         quantize_axis(q[i], -half, width, coder.cells[i]);
        }
        codeword = coder.codebook[encoded_flat];
      } else {
        codeword = coder.codebook.front();
      }
    }

    // Realized in-epoch noise accumulation (zero in the noiseless case).
    VectorXd acc_real = VectorXd::Zero(n);
    for (unsigned i = 0; c > 0.0 && i < r; ++i)
      acc_real += a_pow[r - 1 - i] * v_hist[epoch_start + i];

    TraceRow row;
    row.t = t;
    row.state = x_abs;
    const VectorXd scaled_err_vec = scaled_pow[r] * z +
                                    std::pow(rho, -static_cast<double>(t)) *
                                        acc_real;
    row.scaled_error = scaled_err_vec.lpNorm<Eigen::Infinity>();
    const VectorXd err_vec =
        std::pow(rho, static_cast<double>(epoch_start)) * (a_pow[r] * z) +
        acc_real;
    row.error = err_vec.lpNorm<Eigen::Infinity>();
    row.estimate = x_abs - err_vec;
    trace.rows.push_back(row);
    trace.row_error_bound.push_back(
        (scaled_pow[r].cwiseAbs() * h + acc_bound[r]).lpNorm<Eigen::Infinity>());

    received.push_back(tx.send(t, symbol_at(codeword, r, tau)));

    const VectorXd v_now = noise_source.draw(t, n);
    v_hist.push_back(v_now);

    if (r == tau - 1) {
      // Realized epoch noise roll-up for the offset propagation.
      VectorXd epoch_acc = VectorXd::Zero(n);
      for (unsigned i = 0; c > 0.0 && i < tau; ++i)
        epoch_acc += a_pow[tau - 1 - i] * v_hist[epoch_start + i];

      if (!idle_epoch) {
        // Decode: exactly one codeword is compatible with the received block.
        std::size_t decoded = coder.codebook.size();
        for (std::size_t f = 0; f < coder.codebook.size(); ++f) {
          bool compatible = true;
          for (unsigned i = 0; i < tau && compatible; ++i) {
            compatible = channel
                             .transition(symbol_at(coder.codebook[f], i, tau))
                             .count(received[i]) != 0;
          }
          if (compatible) {
            if (decoded != coder.codebook.size())
              throw InternalError("ambiguous decode of a zero-error codebook");
            decoded = f;
          }
        }
        if (decoded != encoded_flat)
          throw InternalError("decoded codeword differs from the sent one");

        // Shift to the decoded cell midpoint, then propagate one epoch.
        VectorXd shifted(n), cell_half(n);
        std::size_t rem = decoded;
        for (int i = n - 1; i >= 0; --i) {
          const auto k = static_cast<double>(coder.cells[i]);
          const std::size_t s = rem % coder.cells[i];
          rem /= coder.cells[i];
          const double half = h[i] + w_rec[i];
          // Exactly zero for the middle cell of an odd grid.
          const double cell_offset =
              half * ((2.0 * static_cast<double>(s) + 1.0 - k) / k);
          cell_half[i] = half / k;
          // Same fp projection as at the epoch start: the true offset lies
          // within the decoded cell (plus the reconstruction margin).
          shifted[i] = std::clamp(z[i] - cell_offset,
                                  -(cell_half[i] + w_rec[i]),
                                  cell_half[i] + w_rec[i]);
        }
        z = m * shifted + epoch_acc;
        h = m_abs * (cell_half + w_rec) + v_acc;
      } else {
        z = m * z + epoch_acc;
        h = m_abs * h + v_acc;
      }
    }

    x_abs = plant.A * x_abs + v_now;
  }
  return trace;
}

}  // namespace

double PlantModel::spectral_radius() const {
  double r = 0.0;
  for (const auto& lambda : eigenvalues) r = std::max(r, std::abs(lambda));
  return r;
}

PlantModel make_plant(MatrixXd a, MatrixXd g,
                      std::optional<std::vector<std::complex<double>>> eigs,
                      double init_radius, double disturbance_bound,
                      std::optional<std::vector<int>> jordan_blocks) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw InvalidArgument("A must be square and nonempty");
  const int n = static_cast<int>(a.rows());
  if (g.cols() != n || g.rows() < 1)
    throw InvalidArgument("G must have one column per state");
  if (!(init_radius > 0.0))
    throw InvalidArgument("init_radius must be positive");
  if (disturbance_bound < 0.0)
    throw InvalidArgument("disturbance_bound must be nonnegative");

  PlantModel plant;
  plant.A = std::move(a);
  plant.G = std::move(g);
  plant.init_radius = init_radius;
  plant.disturbance_bound = disturbance_bound;

  const double scale = std::max(1.0, plant.A.cwiseAbs().rowwise().sum().maxCoeff());
  if (eigs) {
    if (static_cast<int>(eigs->size()) != n)
      throw InvalidArgument("need exactly one eigenvalue per state");
    for (const auto& lambda : *eigs) {
      Eigen::MatrixXcd shifted =
          plant.A.cast<std::complex<double>>() -
          lambda * Eigen::MatrixXcd::Identity(n, n);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted);
      if (svd.singularValues().minCoeff() > 1e-8 * scale)
        throw InvalidArgument("supplied eigenvalue " +
                              std::to_string(lambda.real()) + "+" +
                              std::to_string(lambda.imag()) +
                              "i is not an eigenvalue of A");
    }
    plant.eigenvalues = *eigs;
  } else if (exactly_triangular(plant.A)) {
    for (int i = 0; i < n; ++i) plant.eigenvalues.emplace_back(plant.A(i, i), 0.0);
  } else {
    Eigen::EigenSolver<MatrixXd> solver(plant.A);
    if (solver.info() != Eigen::Success)
      throw InvalidArgument("eigenvalue computation failed for A");
    for (int i = 0; i < n; ++i) {
      const std::complex<double> lambda = solver.eigenvalues()[i];
      const Eigen::VectorXcd v = solver.eigenvectors().col(i);
      if ((plant.A.cast<std::complex<double>>() * v - lambda * v).norm() >
          1e-8 * scale)
        throw InvalidArgument("eigenvalue residual check failed for A");
      plant.eigenvalues.push_back(lambda);
    }
  }
  sort_eigenvalues(plant.eigenvalues);

  if (jordan_blocks) {
    int sum = 0;
    for (int b : *jordan_blocks) {
      if (b < 1) throw InvalidArgument("jordan block sizes must be >= 1");
      sum += b;
    }
    if (sum != n) throw InvalidArgument("jordan block sizes must sum to n");
    plant.jordan_blocks = *jordan_blocks;
  } else if (exactly_diagonal(plant.A)) {
    plant.jordan_blocks.assign(n, 1);
  } else {
    throw InvalidArgument(
        "A is not diagonal; declare its block structure via jordan_blocks");
  }
  // Off-block entries must vanish exactly for the per-block box arithmetic.
  {
    int offset = 0;
    std::vector<int> block_of(n);
    for (std::size_t b = 0; b < plant.jordan_blocks.size(); ++b) {
      for (int i = 0; i < plant.jordan_blocks[b]; ++i)
        block_of[offset + i] = static_cast<int>(b);
      offset += plant.jordan_blocks[b];
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (block_of[i] != block_of[j] && plant.A(i, j) != 0.0)
          throw InvalidArgument("A is not block-diagonal for the declared "
                                "jordan_blocks");
      }
    }
  }

  Eigen::FullPivLU<MatrixXd> lu(observability_matrix(plant.A, plant.G));
  if (lu.rank() < n) throw InvalidArgument("(G, A) is not observable");
  return plant;
}

Bits unstable_exponent(const std::vector<std::complex<double>>& eigenvalues,
                       double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  double sum = 0.0;
  for (const auto& lambda : eigenvalues) {
    const double mag = std::abs(lambda);
    if (mag >= rho) sum += std::log2(mag / rho);
  }
  return Bits::inexact(sum);
}

const char* to_string(Feasibility f) {
  switch (f) {
    case Feasibility::kAchievable:
      return "ACHIEVABLE";
    case Feasibility::kNecessaryViolated:
      return "NECESSARY-VIOLATED";
    case Feasibility::kBoundary:
      return "BOUNDARY";
    default:
      return "UNKNOWN";
  }
}

FeasibilityVerdict feasibility_check(const PlantModel& plant, double rho,
                                     double c0_lower_bits,
                                     std::optional<double> c0_known_bits) {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  if (c0_known_bits && *c0_known_bits < c0_lower_bits - 1e-12)
    throw InvalidArgument(
        "known capacity is below the certified lower bound; inconsistent "
        "inputs");
  FeasibilityVerdict verdict;
  verdict.h_rho_bits = unstable_exponent(plant.eigenvalues, rho).value();
  verdict.exact_capacity_used = c0_known_bits.has_value();
  verdict.bound_bits = c0_known_bits ? *c0_known_bits : c0_lower_bits;

  if (c0_known_bits && verdict.h_rho_bits > *c0_known_bits) {
    verdict.kind = Feasibility::kNecessaryViolated;
  } else if (verdict.h_rho_bits < verdict.bound_bits) {
    verdict.kind = Feasibility::kAchievable;
  } else if (verdict.h_rho_bits == verdict.bound_bits) {
    verdict.kind = Feasibility::kBoundary;
  } else {
    verdict.kind = Feasibility::kUnknown;
  }
  return verdict;
}

CoderEstimator build_coder_estimator(const PlantModel& plant,
                                     const Channel& channel, double rho,
                                     unsigned tau_max) {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  if (rho >= plant.spectral_radius())
    throw InvalidArgument(
        "rho must be strictly below the spectral radius of A");
  if (tau_max < 1) throw InvalidArgument("tau_max must be >= 1");

  const int n = plant.dimension();
  const double h_rho = unstable_exponent(plant.eigenvalues, rho).value();
  const Graph base = confusability_graph(channel);
  const MatrixXd scaled_a = plant.A / rho;

  double best_rate = 0.0;
  for (unsigned tau = 1; tau <= tau_max; ++tau) {
    const Graph power = strong_power(base, tau);
    const MisResult mis = max_independent_set(power);
    const double rate_bits = std::log2(static_cast<double>(mis.size));
    best_rate = std::max(best_rate, rate_bits / tau);
    if (!(rate_bits > tau * h_rho)) continue;

    // One cell count per axis; all axes of a block share the block's
    // epoch growth, measured in the max norm.
    const MatrixXd m = matrix_power(scaled_a, tau);
    std::vector<std::size_t> cells(n, 1);
    int offset = 0;
    bool overflow = false;
    unsigned long long total = 1;
    for (int b : plant.jordan_blocks) {
      const double growth =
          m.block(offset, 0, b, n).cwiseAbs().rowwise().sum().maxCoeff();
      std::size_t k = 1;
      if (growth >= 1.0) {
        if (growth >= 1e15) {
          overflow = true;
          break;
        }
        k = static_cast<std::size_t>(std::floor(growth)) + 1;
      }
      for (int i = 0; i < b && !overflow; ++i) {
        cells[offset + i] = k;
        if (total > mis.size / k) {
          overflow = true;
          break;
        }
        total *= k;
      }
      if (overflow) break;
      offset += b;
    }
    if (overflow || total > mis.size) continue;

    CoderEstimator coder;
    coder.tau = tau;
    coder.codebook = mis.witness;
    coder.rate_bits = rate_bits;
    coder.cells = std::move(cells);
    coder.rho = rho;
    return coder;
  }

  std::ostringstream msg;
  msg << "no feasible coder within tau <= " << tau_max << ": H_rho = " << h_rho
      << " bits/step, best certified rate = " << best_rate << " bits/step";
  throw InfeasibleError(msg.str());
}

Trace simulate_noiseless(const PlantModel& plant, const CoderEstimator& coder,
                         const Channel& channel, const TransmitPolicy& policy,
                         const VectorXd& x0, unsigned t_end) {
  return run_simulation(plant, coder, channel, policy, x0, ZeroNoise{}, 0.0,
                        t_end);
}

Trace simulate_disturbed(const PlantModel& plant, const CoderEstimator& coder,
                         const Channel& channel, const TransmitPolicy& policy,
                         const VectorXd& x0, const NoisePolicy& noise,
                         unsigned t_end) {
  if (coder.rho != 1.0)
    throw InvalidArgument(
        "disturbed simulation targets uniform boundedness; build the coder "
        "with rho = 1");
  return run_simulation(plant, coder, channel, policy, x0, noise,
                        plant.disturbance_bound, t_end);
}

DisturbedErrorBound disturbed_error_bound(const PlantModel& plant,
                                          const CoderEstimator& coder,
                                          double c, unsigned t_end) {
  if (c < 0.0) throw InvalidArgument("disturbance bound must be nonnegative");
  const int n = plant.dimension();
  const unsigned tau = coder.tau;
  const MatrixXd m = matrix_power(plant.A / coder.rho, tau);
  const MatrixXd m_abs = m.cwiseAbs();

  MatrixXd contraction = m_abs;
  for (int j = 0; j < n; ++j)
    contraction.col(j) /= static_cast<double>(coder.cells[j]);
  const double spectral =
      contraction.eigenvalues().cwiseAbs().maxCoeff();
  if (spectral >= 1.0) {
    std::ostringstream msg;
    msg << "epoch box recursion does not contract (factor " << spectral
        << " >= 1); no disturbance bound c >= 0 yields bounded errors "
           "(critical c = 0)";
    throw InfeasibleError(msg.str());
  }

  const VectorXd w_rec = reconstruction_noise_bound(plant, c);
  const VectorXd v_acc = accumulated_noise_bound(plant.A, c, tau);
  VectorXd cell_w = w_rec;
  for (int j = 0; j < n; ++j) cell_w[j] /= static_cast<double>(coder.cells[j]);
  const VectorXd drift = m_abs * (cell_w + w_rec) + v_acc;

  const VectorXd fixed_point =
      (MatrixXd::Identity(n, n) - contraction).lu().solve(drift);

  std::vector<MatrixXd> a_abs(tau);
  std::vector<VectorXd> acc(tau);
  for (unsigned r = 0; r < tau; ++r) {
    a_abs[r] = matrix_power(plant.A, r).cwiseAbs();
    acc[r] = accumulated_noise_bound(plant.A, c, r);
  }
  auto epoch_sup = [&](const VectorXd& h) {
    double sup = 0.0;
    for (unsigned r = 0; r < tau; ++r)
      sup = std::max(sup,
                     (a_abs[r] * h + acc[r]).lpNorm<Eigen::Infinity>());
    return sup;
  };

  DisturbedErrorBound out;
  out.box_fixed_point = fixed_point.lpNorm<Eigen::Infinity>();
  out.steady_sup = epoch_sup(fixed_point);

  VectorXd h = VectorXd::Constant(n, plant.init_radius);
  double transient = 0.0;
  const unsigned epochs = t_end / tau + 1;
  for (unsigned k = 0; k <= epochs; ++k) {
    transient = std::max(transient, epoch_sup(h));
    h = contraction * h + drift;
  }
  out.transient_sup = std::max(transient, out.steady_sup);
  return out;
}

WitnessPacking necessity_witness(
    const std::vector<std::complex<double>>& eigenvalues, double rho,
    double epsilon, unsigned tau, double radius) {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be positive");
  if (tau < 1) throw InvalidArgument("tau must be >= 1");
  if (!(radius > 0.0)) throw InvalidArgument("radius must be positive");

  std::vector<double> unstable;
  for (const auto& lambda : eigenvalues) {
    const double mag = std::abs(lambda);
    if (mag > rho) unstable.push_back(mag);
  }
  double upper = 1.0;
  for (double mag : unstable) upper = std::min(upper, 1.0 - rho / mag);
  if (!(epsilon > 0.0) || !(epsilon < upper)) {
    std::ostringstream msg;
    msg << "epsilon must lie in (0, " << upper << ")";
    throw InvalidArgument(msg.str());
  }

  WitnessPacking out;
  out.epsilon = epsilon;
  out.tau = tau;
  out.radius = radius;
  for (double mag : unstable) {
    const double cells = std::pow((1.0 - epsilon) * mag / rho,
                                  static_cast<double>(tau));
    if (cells >= 1.8e18)
      throw InvalidArgument("witness cell count overflows; lower tau");
    const auto k = static_cast<unsigned long long>(std::floor(cells));
    out.cell_counts.push_back(k);
    if (out.total > (1ULL << 62) / std::max<unsigned long long>(k, 1))
      throw InvalidArgument("witness total overflows; lower tau");
    out.total *= k;
    out.bound_bits += std::log2(static_cast<double>(k));
  }
  return out;
}

}  // namespace nonstoch
