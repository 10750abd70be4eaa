#include "blockheight/groupio.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "blockheight/errors.hpp"

namespace blockheight {

using nlohmann::json;

namespace {

std::vector<Perm> parse_generators(const json& jgens, size_t degree,
                                   const std::string& where) {
  std::vector<Perm> gens;
  for (const json& jg : jgens) {
    if (jg.size() != degree)
      fail("FormatError", "generator length differs from degree in " + where);
    Perm p(degree);
    for (size_t i = 0; i < degree; ++i) {
      int64_t img = jg[i].get<int64_t>();
      if (img < 1 || static_cast<size_t>(img) > degree)
        fail("FormatError", "generator image out of range in " + where);
      p[i] = static_cast<uint16_t>(img - 1);
    }
    gens.push_back(std::move(p));
  }
  if (gens.empty()) fail("FormatError", "no generators in " + where);
  return gens;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("FormatError", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

GroupFile parse_group_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& ex) {
    fail("FormatError", std::string("bad group JSON: ") + ex.what());
  }
  GroupFile gf;
  try {
    std::string name = in.at("name").get<std::string>();
    size_t degree = in.at("degree").get<size_t>();
    gf.group = PermGroup(name, degree, parse_generators(in.at("generators"), degree, name));
    if (in.contains("subgroups")) {
      for (const auto& [sub_name, jgens] : in.at("subgroups").items()) {
        gf.subgroups.emplace(
            sub_name,
            PermGroup(name + "." + sub_name, degree,
                      parse_generators(jgens, degree, name + "." + sub_name)));
      }
    }
  } catch (const json::exception& ex) {
    fail("FormatError", std::string("bad group JSON: ") + ex.what());
  }
  return gf;
}

GroupFile read_group_file(const std::string& path) { return parse_group_json(slurp(path)); }

std::string write_group_json(const PermGroup& g) {
  json jgens = json::array();
  for (const Perm& p : g.generators()) {
    json jg = json::array();
    for (uint16_t img : p) jg.push_back(img + 1);
    jgens.push_back(jg);
  }
  json out{{"name", g.name()}, {"degree", g.degree()}, {"generators", jgens}};
  return out.dump(1);
}

std::string sniff_file_kind(const std::string& path) {
  json in;
  try {
    in = json::parse(slurp(path));
  } catch (const json::exception&) {
    return "unknown";
  }
  if (in.contains("generators")) return "group";
  if (in.contains("irreducibles")) return "table";
  return "unknown";
}

} // namespace blockheight
