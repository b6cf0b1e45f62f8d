#pragma once

#include <cstdint>
#include <string>

#include "nonstoch/channel.hpp"
#include "nonstoch/ensemble.hpp"
#include "nonstoch/estimation.hpp"
#include "nonstoch/partition.hpp"

namespace nonstoch {

// File formats. Values serialize as JSON numbers (integers), strings
// ("p/q" for rationals, anything else is a symbol), and arrays (tuples).
// A symbol that itself matches the p/q pattern would not round-trip and is
// rejected on save. Map keys (channel transitions) are parsed int-first,
// then p/q, then symbol.

/// {"variables": ["X", ...], "samples": [[v, ...], ...]}
Ensemble ensemble_from_json(const std::string& text);
std::string ensemble_to_json(const Ensemble& e);

/// {"ground": "discrete"|"interval",
///  "members": [{"label": v, "set": [v,...] or [[lo,hi],...]}]}
RangeFamily family_from_json(const std::string& text);
std::string family_to_json(const RangeFamily& family);

/// {"inputs": [...], "outputs": [...], "transition": {"x": ["y", ...]}}
Channel channel_from_json(const std::string& text);
std::string channel_to_json(const Channel& channel);

/// {"A": [[...]], "G": [[...]], "eigenvalues": [x or [re, im], ...],
///  "l": r, "c": r, "jordan_blocks": [sizes]}
/// eigenvalues and jordan_blocks are optional.
PlantModel plant_from_json(const std::string& text);

/// {"blocks": [...], "provenance": {...}, "bits": n}
std::string partition_to_json(const Partition& partition);

std::string profile_to_json(const CapacityProfile& profile);
std::string profile_to_csv(const CapacityProfile& profile);

/// One "vertex: neighbor neighbor ..." line per vertex.
std::string graph_to_adjacency_text(const Graph& g);

/// Header t,state_0..,estimate_0..,err,scaled_err; one row per step.
std::string trace_to_csv(const Trace& trace);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

std::uint64_t fnv1a64(const std::string& bytes);
std::uint64_t fnv1a64_file(const std::string& path);

}  // namespace nonstoch
