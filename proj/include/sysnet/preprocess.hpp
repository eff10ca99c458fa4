#pragma once

#include <sysnet/core.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sysnet {

/// Global bijection entityName <-> entityId, shared by every state of a
/// series. Ids are dense: the K names seen so far map exactly onto 1..K.
class EntityIndex {
 public:
  /// Returns the id of `name`, assigning the next free id on first sight.
  EntityId get_or_add(std::string_view name);

  std::optional<EntityId> lookup(std::string_view name) const;

  /// Throws ValidationError for ids outside 1..size().
  const std::string& name_of(EntityId id) const;

  std::size_t size() const { return names_.size(); }
  EntityId next_id() const { return static_cast<EntityId>(names_.size()) + 1; }

  /// Names in id order; names()[i] has id i+1.
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::unordered_map<std::string, EntityId> forward_;
  std::vector<std::string> names_;
};

/// How raw snapshot lines become connection pairs.
enum class GroupingStrategy {
  PerSource,      // edge list; one pair ({s}, successors(s)) per distinct source
  ExplicitPairs,  // file already lists "L -> R" pairs
};

/// A connection pair still in name form, token order as read.
struct NamedPair {
  std::vector<std::string> left;
  std::vector<std::string> right;
};

/// Parses one snapshot file into named pairs. Comment lines ('#' first
/// non-blank char) and blank lines are ignored; any other malformed line is
/// an error, not a skip.
std::vector<NamedPair> ingest_state(const std::filesystem::path& file, GroupingStrategy grouping);

struct EncodedSeries {
  std::vector<SysNetDb> states;
  EntityIndex index;
};

/// Assigns entity ids in first-encounter order scanning states in series
/// order, pairs in order, left side before right side, and returns the
/// id-form databases. A name seen in several states keeps one id.
EncodedSeries encode_series(const std::vector<std::vector<NamedPair>>& states,
                            const std::vector<std::string>& labels);

// SysNetDb file: one pair per line, ascending left ids, "-1", ascending
// right ids, "-2". Example: "1 3 -1 2 -2".
void write_db(const SysNetDb& db, const std::filesystem::path& file);
SysNetDb read_db(const std::filesystem::path& file, std::string state_label = {});

// Index file: one "<entityID>\t<entityName>" per line, ascending by id.
void write_index(const EntityIndex& index, const std::filesystem::path& file);
EntityIndex read_index(const std::filesystem::path& file);

/// Manifest: one snapshot filename per line; defines series order.
std::vector<std::string> read_manifest(const std::filesystem::path& file);
void write_manifest(const std::vector<std::string>& names, const std::filesystem::path& file);

}  // namespace sysnet
