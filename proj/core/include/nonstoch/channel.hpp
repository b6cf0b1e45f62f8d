#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <variant>
#include <vector>

#include "nonstoch/bits.hpp"
#include "nonstoch/ensemble.hpp"
#include "nonstoch/errors.hpp"
#include "nonstoch/graph.hpp"

namespace nonstoch {

/// A stationary memoryless channel described by a set-valued transition map:
/// each input symbol can come out as any symbol of its output set, chosen
/// adversarially or otherwise, independently per use. No probabilities
/// anywhere; only the supports matter.
class Channel {
 public:
  static Channel make(ValueSet inputs, ValueSet outputs,
                      std::map<Value, ValueSet> transition);

  const ValueSet& inputs() const { return inputs_; }
  const ValueSet& outputs() const { return outputs_; }
  const ValueSet& transition(const Value& x) const;
  const std::map<Value, ValueSet>& transition_map() const {
    return transition_;
  }

 private:
  Channel() = default;
  ValueSet inputs_;
  ValueSet outputs_;
  std::map<Value, ValueSet> transition_;
};

/// Adjoint of the transition map: reverse(y) holds every input that can
/// produce y, so x is in reverse(y) exactly when y is in transition(x).
using ReverseMap = std::map<Value, ValueSet>;
ReverseMap reverse_map(const Channel& channel);

/// Posterior input range after observing a block: the unconditional input
/// range intersected with the per-symbol reverse sets. Elements of
/// `input_range` must be tuples as long as `y_seq`. May be empty (the
/// observation can rule out every candidate block).
ValueSet block_conditional_range(const Channel& channel,
                                 const ValueSet& input_range,
                                 const Value::Tuple& y_seq);

/// Inputs become adjacent when their output sets intersect, i.e. when one
/// channel use can confuse them. Valid zero-error codebooks are exactly the
/// independent sets of this graph (of its strong powers, for blocks).
Graph confusability_graph(const Channel& channel);

struct CapacityRecord {
  unsigned tau = 0;          // block length
  std::size_t alpha = 0;     // independence number of the tau-fold power
  double rate_bits = 0.0;    // log2(alpha) / tau
};

/// Certified lower-bound profile for the zero-error capacity. Exact capacity
/// is out of reach in general; best_rate_bits only ever certifies "at least".
struct CapacityProfile {
  std::vector<CapacityRecord> records;
  double best_rate_bits = 0.0;
};

/// Search-budget failure that still carries the finished profile rows.
class ProfileBudgetExceeded : public SearchBudgetExceeded {
 public:
  ProfileBudgetExceeded(const SearchBudgetExceeded& cause,
                        CapacityProfile partial)
      : SearchBudgetExceeded(cause), partial_(std::move(partial)) {}
  const CapacityProfile& partial() const { return partial_; }

 private:
  CapacityProfile partial_;
};

CapacityProfile c0_lower_profile(const Channel& channel, unsigned t_max,
                                 const MisOptions& options = {});

struct CodebookWitness {
  unsigned tau = 0;
  std::vector<Value> codebook;  // tuples for tau >= 2, raw symbols for tau = 1
  Bits maximin_bits = Bits::from_count(1);
};

/// Builds the maximum zero-error codebook at block length tau, routes it
/// through the block channel as an ensemble, and checks that the maximin
/// information between sent and received blocks equals log2 of the codebook
/// size (every codeword lands in its own partition block).
CodebookWitness codebook_witness(const Channel& channel, unsigned tau,
                                 const MisOptions& options = {});

/// Output selection when several outputs are possible. `FirstPolicy` picks
/// the smallest output, the callback form lets an adversary choose from
/// (t, input, options), and the seeded policy draws reproducibly.
struct FirstPolicy {};
struct SeededUniformPolicy {
  std::uint64_t seed = 0;
};
using AdversarialCallback =
    std::function<Value(std::size_t t, const Value& x, const ValueSet& options)>;
using TransmitPolicy =
    std::variant<FirstPolicy, SeededUniformPolicy, AdversarialCallback>;

/// Adversary that always picks the largest admissible output.
TransmitPolicy max_output_policy();

/// Incremental channel use with persistent policy state, for callers that
/// interleave transmission with other work (one symbol per plant step).
class Transmitter {
 public:
  Transmitter(const Channel& channel, TransmitPolicy policy);
  Value send(std::size_t t, const Value& input);

 private:
  const Channel& channel_;
  TransmitPolicy policy_;
  std::mt19937_64 rng_;
};

std::vector<Value> transmit(const Channel& channel,
                            const std::vector<Value>& input_seq,
                            const TransmitPolicy& policy);

}  // namespace nonstoch
