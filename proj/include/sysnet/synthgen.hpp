#pragma once

#include <sysnet/core.hpp>

#include <cstdint>
#include <filesystem>
#include <vector>

namespace sysnet {

/// A rule planted into chosen states with an exact number of supporting
/// pairs. Planted rules must have pairwise disjoint vocabularies so the
/// planted support counts cannot interfere with each other.
struct PlantedRule {
  Rule rule;
  std::vector<std::uint32_t> states_present;  // 1-based, ascending, unique
  std::uint32_t copies = 1;
};

/// Recipe for a deterministic synthetic state series. Noise pairs are
/// singleton->singleton pairs drawn from a vocabulary disjoint from every
/// planted rule, so noise can form rules only among noise entities.
struct PlantSpec {
  std::uint32_t n_states = 1;
  std::vector<PlantedRule> planted;
  std::uint32_t noise_pairs_per_state = 0;
  std::uint32_t noise_vocab_size = 0;
  EntityId noise_vocab_start = 0;  // 0 = just past the largest planted id
  std::uint64_t seed = 0;

  EntityId effective_noise_start() const;
  void validate() const;
};

/// Spec file format (one directive per line, '#' comments allowed):
///   states 5
///   seed 42
///   noise-pairs 10
///   noise-vocab 8
///   noise-start 100
///   plant 1 2 -> 3 @ 1,3,5 x 4
PlantSpec parse_plant_spec(const std::filesystem::path& file);

/// States labelled S1..SN. Identical spec -> identical output.
std::vector<SysNetDb> generate(const PlantSpec& spec);

}  // namespace sysnet
