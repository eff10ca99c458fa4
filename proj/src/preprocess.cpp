#include <sysnet/preprocess.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace sysnet {
namespace {

std::string loc(const std::filesystem::path& file, std::size_t lineno) {
  return file.string() + ":" + std::to_string(lineno);
}

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '#';
  }
  return true;
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

void check_name(const std::string& name, const std::filesystem::path& file, std::size_t lineno) {
  if (name == "->")
    throw ParseError(loc(file, lineno) + ": '->' is reserved and cannot name an entity");
  if (name.front() == '#')
    throw ParseError(loc(file, lineno) + ": entity names may not start with '#'");
}

// Keeps first occurrence, drops later duplicates.
std::vector<std::string> dedup_preserving_order(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  std::unordered_set<std::string_view> seen;
  for (const auto& n : names) {
    if (seen.insert(n).second) out.push_back(n);
  }
  return out;
}

std::vector<NamedPair> ingest_edges(std::ifstream& in, const std::filesystem::path& file) {
  // fold edges into one pair per distinct source, first-appearance order
  std::vector<std::string> source_order;
  std::unordered_map<std::string, std::vector<std::string>> successors;
  std::string line;
  std::size_t lineno = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    auto tokens = split_tokens(line);
    if (tokens.size() != 2)
      throw ParseError(loc(file, lineno) + ": expected '<source>\t<target>', got " +
                       std::to_string(tokens.size()) + " token(s)");
    check_name(tokens[0], file, lineno);
    check_name(tokens[1], file, lineno);
    any = true;
    auto [it, inserted] = successors.try_emplace(tokens[0]);
    if (inserted) source_order.push_back(tokens[0]);
    it->second.push_back(tokens[1]);
  }
  if (!any) throw ParseError(file.string() + ": no edges (file empty after comments)");

  std::vector<NamedPair> pairs;
  pairs.reserve(source_order.size());
  for (const auto& src : source_order) {
    pairs.push_back(NamedPair{{src}, dedup_preserving_order(successors.at(src))});
  }
  return pairs;
}

std::vector<NamedPair> ingest_pairs(std::ifstream& in, const std::filesystem::path& file) {
  std::vector<NamedPair> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    auto tokens = split_tokens(line);
    auto arrow = std::find(tokens.begin(), tokens.end(), "->");
    if (arrow == tokens.end())
      throw ParseError(loc(file, lineno) + ": pair line is missing the '->' separator");
    if (std::find(arrow + 1, tokens.end(), "->") != tokens.end())
      throw ParseError(loc(file, lineno) + ": pair line has more than one '->'");
    std::vector<std::string> left(tokens.begin(), arrow);
    std::vector<std::string> right(arrow + 1, tokens.end());
    if (left.empty()) throw ParseError(loc(file, lineno) + ": empty left side");
    if (right.empty()) throw ParseError(loc(file, lineno) + ": empty right side");
    for (const auto& n : left) check_name(n, file, lineno);
    for (const auto& n : right) check_name(n, file, lineno);
    pairs.push_back(NamedPair{dedup_preserving_order(left), dedup_preserving_order(right)});
  }
  if (pairs.empty()) throw ParseError(file.string() + ": no pairs (file empty after comments)");
  return pairs;
}

}  // namespace

EntityId EntityIndex::get_or_add(std::string_view name) {
  auto it = forward_.find(std::string(name));
  if (it != forward_.end()) return it->second;
  EntityId id = next_id();
  names_.emplace_back(name);
  forward_.emplace(std::string(name), id);
  return id;
}

std::optional<EntityId> EntityIndex::lookup(std::string_view name) const {
  auto it = forward_.find(std::string(name));
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

const std::string& EntityIndex::name_of(EntityId id) const {
  if (id == 0 || id > names_.size())
    throw ValidationError("unknown entity id " + std::to_string(id));
  return names_[id - 1];
}

std::vector<NamedPair> ingest_state(const std::filesystem::path& file, GroupingStrategy grouping) {
  std::ifstream in(file);
  if (!in.is_open()) throw IoError("cannot open " + file.string());
  switch (grouping) {
    case GroupingStrategy::PerSource:
      return ingest_edges(in, file);
    case GroupingStrategy::ExplicitPairs:
      return ingest_pairs(in, file);
  }
  throw ValidationError("unknown grouping strategy");
}

EncodedSeries encode_series(const std::vector<std::vector<NamedPair>>& states,
                            const std::vector<std::string>& labels) {
  if (states.empty()) throw ValidationError("encode_series: at least one state required");
  if (labels.size() != states.size())
    throw ValidationError("encode_series: one label per state required");

  EncodedSeries out;
  for (std::size_t s = 0; s < states.size(); ++s) {
    SysNetDb db;
    db.state_label = labels[s];
    db.pairs.reserve(states[s].size());
    for (const NamedPair& np : states[s]) {
      ConnectionPair cp;
      for (const auto& name : np.left) cp.left.push_back(out.index.get_or_add(name));
      for (const auto& name : np.right) cp.right.push_back(out.index.get_or_add(name));
      normalize_id_set(cp.left);
      normalize_id_set(cp.right);
      if (cp.left.empty() || cp.right.empty())
        throw ValidationError("encode_series: connection pair with an empty side");
      db.pairs.push_back(std::move(cp));
    }
    out.states.push_back(std::move(db));
  }
  return out;
}

void write_db(const SysNetDb& db, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out.is_open()) throw IoError("cannot write " + file.string());
  for (const ConnectionPair& cp : db.pairs) {
    for (EntityId id : cp.left) out << id << ' ';
    out << "-1";
    for (EntityId id : cp.right) out << ' ' << id;
    out << " -2\n";
  }
  if (!out) throw IoError("write failed: " + file.string());
}

SysNetDb read_db(const std::filesystem::path& file, std::string state_label) {
  std::ifstream in(file);
  if (!in.is_open()) throw IoError("cannot open " + file.string());
  SysNetDb db;
  db.state_label = state_label.empty() ? file.stem().string() : std::move(state_label);

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    auto tokens = split_tokens(line);
    ConnectionPair cp;
    IdSet* side = &cp.left;
    bool closed = false;
    for (const auto& tok : tokens) {
      if (closed) throw ParseError(loc(file, lineno) + ": content after '-2'");
      if (tok == "-1") {
        if (side != &cp.left) throw ParseError(loc(file, lineno) + ": repeated '-1'");
        side = &cp.right;
        continue;
      }
      if (tok == "-2") {
        if (side != &cp.right) throw ParseError(loc(file, lineno) + ": '-2' before '-1'");
        closed = true;
        continue;
      }
      std::uint64_t value = 0;
      for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw ParseError(loc(file, lineno) + ": expected entity id, got '" + tok + "'");
        value = value * 10 + static_cast<std::uint64_t>(c - '0');
        if (value > 0xFFFFFFFFULL) throw ParseError(loc(file, lineno) + ": id out of range");
      }
      if (value == 0) throw ParseError(loc(file, lineno) + ": entity ids start at 1");
      if (!side->empty() && side->back() >= value)
        throw ParseError(loc(file, lineno) + ": ids must be strictly ascending within a side");
      side->push_back(static_cast<EntityId>(value));
    }
    if (!closed) throw ParseError(loc(file, lineno) + ": missing '-2'");
    if (cp.left.empty()) throw ParseError(loc(file, lineno) + ": empty left side");
    if (cp.right.empty()) throw ParseError(loc(file, lineno) + ": empty right side");
    db.pairs.push_back(std::move(cp));
  }
  return db;
}

void write_index(const EntityIndex& index, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out.is_open()) throw IoError("cannot write " + file.string());
  const auto& names = index.names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << (i + 1) << '\t' << names[i] << '\n';
  }
  if (!out) throw IoError("write failed: " + file.string());
}

EntityIndex read_index(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in.is_open()) throw IoError("cannot open " + file.string());

  std::vector<std::pair<EntityId, std::string>> entries;
  std::unordered_set<std::string> seen_names;
  std::unordered_set<EntityId> seen_ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError(loc(file, lineno) + ": expected '<entityID>\t<entityName>'");
    std::string id_text = line.substr(0, tab);
    std::string name = line.substr(tab + 1);
    if (id_text.empty() ||
        !std::all_of(id_text.begin(), id_text.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError(loc(file, lineno) + ": non-integer entity id '" + id_text + "'");
    std::uint64_t id = std::stoull(id_text);
    if (id == 0 || id > 0xFFFFFFFFULL)
      throw ParseError(loc(file, lineno) + ": id out of range");
    if (name.empty()) throw ParseError(loc(file, lineno) + ": empty entity name");
    if (name.find_first_of(" \t") != std::string::npos)
      throw ParseError(loc(file, lineno) + ": entity name contains whitespace");
    check_name(name, file, lineno);
    if (!seen_ids.insert(static_cast<EntityId>(id)).second)
      throw ParseError(loc(file, lineno) + ": duplicate id " + id_text);
    if (!seen_names.insert(name).second)
      throw ParseError(loc(file, lineno) + ": duplicate name '" + name + "'");
    entries.emplace_back(static_cast<EntityId>(id), std::move(name));
  }

  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  EntityIndex index;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first != i + 1)
      throw ParseError(file.string() + ": ids must cover exactly 1.." +
                       std::to_string(entries.size()) + " (missing id " +
                       std::to_string(i + 1) + ")");
    index.get_or_add(entries[i].second);
  }
  return index;
}

std::vector<std::string> read_manifest(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in.is_open()) throw IoError("cannot open " + file.string());
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (is_blank_or_comment(line)) continue;
    // trim trailing whitespace (e.g. carriage returns)
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    names.push_back(line);
  }
  return names;
}

void write_manifest(const std::vector<std::string>& names, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out.is_open()) throw IoError("cannot write " + file.string());
  for (const auto& n : names) out << n << '\n';
  if (!out) throw IoError("write failed: " + file.string());
}

}  // namespace sysnet
