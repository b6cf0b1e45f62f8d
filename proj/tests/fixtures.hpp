#pragma once

// Shared small ensembles and channels used across the test suites.

#include <nonstoch/channel.hpp>
#include <nonstoch/ensemble.hpp>

namespace fixtures {

using namespace nonstoch;

/// X and Z are unrelated bits; Y copies X when Z = 0 and is masked to 2 when
/// Z = 1. The conditional family of Y given X is {{0,2},{1,2}}: both sets
/// share the mask symbol, so observing X pins down nothing about Y for sure.
inline Ensemble masked_copy() {
  return Ensemble({"X", "Z", "Y"}, {
                                       {Value(0), Value(0), Value(0)},
                                       {Value(0), Value(1), Value(2)},
                                       {Value(1), Value(0), Value(1)},
                                       {Value(1), Value(1), Value(2)},
                                   });
}

/// Joint range {(0,0), (0,1), (1,1)}: X and Y are related, yet the joint
/// range is taxicab connected, so no information can be agreed on.
inline Ensemble staircase() {
  return Ensemble({"X", "Y"}, {
                                  {Value(0), Value(0)},
                                  {Value(0), Value(1)},
                                  {Value(1), Value(1)},
                              });
}

/// All four combinations of two bits.
inline Ensemble two_free_bits() {
  return Ensemble({"X", "Y"}, {
                                  {Value(0), Value(0)},
                                  {Value(0), Value(1)},
                                  {Value(1), Value(0)},
                                  {Value(1), Value(1)},
                              });
}

/// Identity ensemble Y = X over k values.
inline Ensemble identity_copy(int k) {
  std::vector<std::vector<Value>> rows;
  for (int i = 0; i < k; ++i) rows.push_back({Value(i), Value(i)});
  return Ensemble({"X", "Y"}, std::move(rows));
}

inline Channel noiseless_binary() {
  return Channel::make({Value(0), Value(1)}, {Value(0), Value(1)},
                       {{Value(0), {Value(0)}}, {Value(1), {Value(1)}}});
}

/// Both inputs can produce both outputs: complete confusion, capacity 0.
inline Channel fully_confusable_binary() {
  return Channel::make({Value(0), Value(1)}, {Value(0), Value(1)},
                       {{Value(0), {Value(0), Value(1)}},
                        {Value(1), {Value(0), Value(1)}}});
}

/// Five inputs, T(i) = {i, i+1 mod 5}; the confusability graph is the
/// five-cycle.
inline Channel pentagon() {
  ValueSet symbols;
  std::map<Value, ValueSet> transition;
  for (int i = 0; i < 5; ++i) {
    symbols.insert(Value(i));
    transition[Value(i)] = {Value(i), Value((i + 1) % 5)};
  }
  return Channel::make(symbols, symbols, std::move(transition));
}

/// Binary erasure: each bit may come through or degrade to the symbol e.
inline Channel binary_erasure() {
  return Channel::make({Value(0), Value(1)}, {Value(0), Value(1), Value("e")},
                       {{Value(0), {Value(0), Value("e")}},
                        {Value(1), {Value(1), Value("e")}}});
}

}  // namespace fixtures
