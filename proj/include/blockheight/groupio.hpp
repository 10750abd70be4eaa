#pragma once

#include <map>
#include <string>

#include "blockheight/permgroup.hpp"

namespace blockheight {

/// Group file: { "name": str, "degree": n, "generators": [[1-based images]],
/// "subgroups": { name: [[...]] } (optional) }.
struct GroupFile {
  PermGroup group;
  std::map<std::string, PermGroup> subgroups; // same degree, not enumerated
};

GroupFile parse_group_json(const std::string& text);
GroupFile read_group_file(const std::string& path);
std::string write_group_json(const PermGroup& g);

/// "group", "table", or "unknown" by sniffing the JSON keys.
std::string sniff_file_kind(const std::string& path);

} // namespace blockheight
