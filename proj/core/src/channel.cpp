#include "nonstoch/channel.hpp"

#include <cmath>
#include <random>
#include <string>

#include "nonstoch/errors.hpp"
#include "nonstoch/info.hpp"

namespace nonstoch {

Channel Channel::make(ValueSet inputs, ValueSet outputs,
                      std::map<Value, ValueSet> transition) {
  if (inputs.empty()) throw InvalidArgument("channel needs at least one input");
  if (outputs.empty())
    throw InvalidArgument("channel needs at least one output");
  ValueSet reachable;
  for (const Value& x : inputs) {
    auto it = transition.find(x);
    if (it == transition.end())
      throw InvalidArgument("transition map misses input " + x.str());
    if (it->second.empty())
      throw InvalidArgument("input " + x.str() + " has an empty output set");
    for (const Value& y : it->second) {
      if (!outputs.count(y))
        throw InvalidArgument("transition of " + x.str() +
                              " leaves the output alphabet: " + y.str());
      reachable.insert(y);
    }
  }
  for (const auto& [x, _] : transition) {
    if (!inputs.count(x))
      throw InvalidArgument("transition row for unknown input " + x.str());
  }
  for (const Value& y : outputs) {
    if (!reachable.count(y))
      throw InvalidArgument("output " + y.str() + " is unreachable");
  }

  Channel c;
  c.inputs_ = std::move(inputs);
  c.outputs_ = std::move(outputs);
  c.transition_ = std::move(transition);
  return c;
}

const ValueSet& Channel::transition(const Value& x) const {
  auto it = transition_.find(x);
  if (it == transition_.end())
    throw InvalidArgument("input outside the alphabet: " + x.str());
  return it->second;
}

ReverseMap reverse_map(const Channel& channel) {
  ReverseMap reverse;
  for (const Value& y : channel.outputs()) reverse[y];
  for (const auto& [x, ys] : channel.transition_map()) {
    for (const Value& y : ys) reverse[y].insert(x);
  }
  return reverse;
}

ValueSet block_conditional_range(const Channel& channel,
                                 const ValueSet& input_range,
                                 const Value::Tuple& y_seq) {
  if (y_seq.empty()) throw InvalidArgument("empty output sequence");
  for (const Value& y : y_seq) {
    if (!channel.outputs().count(y))
      throw InvalidArgument("output outside the alphabet: " + y.str());
  }
  ValueSet out;
  for (const Value& f : input_range) {
    if (!f.is_tuple() || f.tuple().size() != y_seq.size())
      throw InvalidArgument("input block length does not match the output");
    bool compatible = true;
    for (std::size_t i = 0; i < y_seq.size(); ++i) {
      if (!channel.transition(f.tuple()[i]).count(y_seq[i])) {
        compatible = false;
        break;
      }
    }
    if (compatible) out.insert(f);
  }
  return out;
}

Graph confusability_graph(const Channel& channel) {
  std::vector<Value> vertices(channel.inputs().begin(),
                              channel.inputs().end());
  Graph g(std::move(vertices));
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    const ValueSet& ti = channel.transition(g.vertex(i));
    for (std::size_t j = i + 1; j < g.vertex_count(); ++j) {
      for (const Value& y : channel.transition(g.vertex(j))) {
        if (ti.count(y)) {
          g.add_edge(i, j);
          break;
        }
      }
    }
  }
  return g;
}

CapacityProfile c0_lower_profile(const Channel& channel, unsigned t_max,
                                 const MisOptions& options) {
  if (t_max < 1) throw InvalidArgument("profile needs t_max >= 1");
  const Graph base = confusability_graph(channel);
  CapacityProfile profile;
  for (unsigned tau = 1; tau <= t_max; ++tau) {
    try {
      const Graph power = strong_power(base, tau);
      const MisResult mis = max_independent_set(power, options);
      const double rate =
          std::log2(static_cast<double>(mis.size)) / static_cast<double>(tau);
      profile.records.push_back({tau, mis.size, rate});
      profile.best_rate_bits = std::max(profile.best_rate_bits, rate);
    } catch (const SearchBudgetExceeded& e) {
      throw ProfileBudgetExceeded(e, profile);
    } catch (const InvalidArgument& e) {
      // Vertex-cap overflow on the power graph is a budget problem here.
      throw ProfileBudgetExceeded(
          SearchBudgetExceeded(e.what(),
                               profile.records.empty()
                                   ? 0
                                   : profile.records.back().alpha),
          profile);
    }
  }
  return profile;
}

CodebookWitness codebook_witness(const Channel& channel, unsigned tau,
                                 const MisOptions& options) {
  if (tau < 1) throw InvalidArgument("codebook needs tau >= 1");
  const Graph base = confusability_graph(channel);
  const Graph power = strong_power(base, tau);
  const MisResult mis = max_independent_set(power, options);

  // Route the codebook through the block channel: one sample per
  // (codeword, possible output block) pair.
  std::vector<std::vector<Value>> rows;
  for (const Value& f : mis.witness) {
    std::vector<Value::Tuple> outputs{{}};
    for (unsigned i = 0; i < tau; ++i) {
      const Value& symbol = tau == 1 ? f : f.tuple()[i];
      std::vector<Value::Tuple> grown;
      for (const auto& prefix : outputs) {
        for (const Value& y : channel.transition(symbol)) {
          Value::Tuple next = prefix;
          next.push_back(y);
          grown.push_back(std::move(next));
        }
      }
      outputs = std::move(grown);
    }
    for (auto& y : outputs)
      rows.push_back({f, tau == 1 ? y.front() : Value(std::move(y))});
  }
  const Ensemble e({"X", "Y"}, std::move(rows));
  const Bits info = maximin_info(e, "X", "Y");
  if (!(info == Bits::from_count(mis.size)))
    throw InternalError(
        "codebook maximin information does not match the codebook size");
  return CodebookWitness{tau, mis.witness, info};
}

TransmitPolicy max_output_policy() {
  return AdversarialCallback(
      [](std::size_t, const Value&, const ValueSet& options) {
        return *options.rbegin();
      });
}

Transmitter::Transmitter(const Channel& channel, TransmitPolicy policy)
    : channel_(channel), policy_(std::move(policy)) {
  if (const auto* seeded = std::get_if<SeededUniformPolicy>(&policy_))
    rng_.seed(seeded->seed);
}

Value Transmitter::send(std::size_t t, const Value& input) {
  const ValueSet& options = channel_.transition(input);
  if (std::holds_alternative<FirstPolicy>(policy_)) return *options.begin();
  if (std::holds_alternative<SeededUniformPolicy>(policy_)) {
    auto it = options.begin();
    std::advance(it, static_cast<long>(rng_() % options.size()));
    return *it;
  }
  const auto& choose = std::get<AdversarialCallback>(policy_);
  Value y = choose(t, input, options);
  if (!options.count(y))
    throw InvalidArgument("adversarial policy chose an impossible output " +
                          y.str());
  return y;
}

std::vector<Value> transmit(const Channel& channel,
                            const std::vector<Value>& input_seq,
                            const TransmitPolicy& policy) {
  Transmitter tx(channel, policy);
  std::vector<Value> out;
  out.reserve(input_seq.size());
  for (std::size_t t = 0; t < input_seq.size(); ++t)
    out.push_back(tx.send(t, input_seq[t]));
  return out;
}

}  // namespace nonstoch
