// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kgcrawl/lm_backend.hpp"
#include "kgcrawl/prompting.hpp"
#include "kgcrawl/reference_kb.hpp"

namespace kgcrawl {

enum class ProbeVerdict { kCorrect, kWrong, kAbstained };

std::string_view to_string(ProbeVerdict v);

struct DkProbeResult {
  EntityName subject;
  RelationName relation;
  std::vector<EntityName> gold_objects;
  ObjectAnswer predicted;
  ProbeVerdict verdict;
  /// Set when the backend failed for this pair; the verdict is then
  /// kAbstained and the pair is never used as an example.
  std::optional<std::string> error;
};

inline constexpr double kGoldMatchF1 = 0.85;
inline constexpr std::size_t kDkExamples = 10;

/// Normalized equality, or token F1 >= 0.85.
bool object_matches(const EntityName& predicted, const EntityName& gold);

ProbeVerdict classify_prediction(const ObjectAnswer& predicted,
                                 const std::vector<EntityName>& gold);

struct ProbeOptions {
  /// Pure object-generation demonstrations.
  std::vector<InContextExample> examples;
  std::size_t max_in_flight = 4;
};

/// Runs greedy pure object generation for each (subject, relation) pair and
/// grades it against the KB. Output order follows `pairs`. Throws
/// std::invalid_argument if a pair is not in the KB.
std::vector<DkProbeResult> probe(
    const ReferenceKb& kb, LanguageModel& lm,
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const ProbeOptions& options);

class InsufficientProbesError : public std::runtime_error {
 public:
  InsufficientProbesError(std::size_t wrong, std::size_t correct,
                          std::size_t needed);
  std::size_t wrong() const noexcept { return wrong_; }
  std::size_t correct() const noexcept { return correct_; }

 private:
  std::size_t wrong_;
  std::size_t correct_;
};

/// k_dk/2 "Don't know" examples drawn from wrong probes and k_dk/2 gold
/// answers drawn from correct probes, in a seeded interleaving. k_dk must be
/// even and positive.
std::vector<InContextExample> build_dk_examples(
    const std::vector<DkProbeResult>& results, std::size_t k_dk = kDkExamples,
    std::uint64_t rng_seed = 0);

}  // namespace kgcrawl
