#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "blockheight/blocktheory.hpp"
#include "blockheight/combinatorics.hpp"
#include "blockheight/corpus.hpp"
#include "blockheight/errors.hpp"
#include "blockheight/groupio.hpp"
#include "blockheight/pgroups.hpp"

using namespace blockheight;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitError = 65;

struct Common {
  bool json_out = false;
  uint64_t cap = kDefaultEnumerationCap;
  uint64_t seed = 0; // accepted and ignored: everything is deterministic
};

uint64_t env_cap() {
  if (const char* s = std::getenv("BLOCKHEIGHT_CAP")) {
    char* end = nullptr;
    uint64_t v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultEnumerationCap;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_flag("--json", c.json_out, "machine-readable JSON output");
  cmd->add_option("--cap", c.cap, "element enumeration cap");
  cmd->add_option("--seed", c.seed, "accepted for interface stability; ignored");
}

/// Loads either a group file (computing its table) or a table file.
struct LoadedSource {
  std::optional<PermGroup> group;
  std::map<std::string, PermGroup> subgroups;
  CharacterTable table;
};

LoadedSource load_source(const std::string& path, uint64_t cap) {
  LoadedSource src;
  std::string kind = sniff_file_kind(path);
  if (kind == "group") {
    GroupFile gf = read_group_file(path);
    gf.group.enumerate(cap);
    src.table = dixon_schneider(gf.group);
    src.group = std::move(gf.group);
    src.subgroups = std::move(gf.subgroups);
  } else if (kind == "table") {
    src.table = import_table_file(path);
  } else {
    fail("FormatError", path + " is neither a group file nor a table file");
  }
  return src;
}

Partition parse_partition(const std::string& s) {
  Partition p;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      if (!cur.empty()) p.push_back(static_cast<uint32_t>(std::stoul(cur)));
      cur.clear();
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      cur += ch;
    } else {
      fail("FormatError", "bad partition syntax: " + s);
    }
  }
  for (size_t i = 1; i < p.size(); ++i)
    if (p[i] > p[i - 1]) fail("FormatError", "partition parts must be weakly decreasing");
  return p;
}

json mh_json(const std::optional<uint32_t>& mh) { return mh ? json(*mh) : json("inf"); }

std::string part_str(const Partition& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact p-block and character-height computations for finite groups"};
  app.require_subcommand(1);
  uint64_t default_cap = env_cap();

  // chartable
  Common c_table;
  std::string table_input, table_output;
  CLI::App* cmd_table = app.add_subcommand("chartable", "compute or re-validate a character table");
  cmd_table->add_option("file", table_input, "group or table JSON file")->required();
  cmd_table->add_option("-o,--output", table_output, "write the table to this file");
  add_common(cmd_table, c_table);

  // blocks
  Common c_blocks;
  std::string blocks_input;
  uint64_t blocks_p = 0;
  CLI::App* cmd_blocks = app.add_subcommand("blocks", "p-block partition with defects and heights");
  cmd_blocks->add_option("file", blocks_input)->required();
  cmd_blocks->add_option("-p,--prime", blocks_p, "prime p")->required();
  add_common(cmd_blocks, c_blocks);

  // mh
  Common c_mh;
  std::string mh_input;
  uint64_t mh_p = 0;
  CLI::App* cmd_mh = app.add_subcommand("mh", "minimal positive height per block");
  cmd_mh->add_option("file", mh_input)->required();
  cmd_mh->add_option("-p,--prime", mh_p)->required();
  add_common(cmd_mh, c_mh);

  // verify-em
  Common c_em;
  std::string em_input;
  uint64_t em_p = 0;
  std::vector<std::string> em_defect_names, em_defect_files;
  CLI::App* cmd_em = app.add_subcommand("verify-em", "compare mh(B) with mh(D) per block");
  cmd_em->add_option("file", em_input)->required();
  cmd_em->add_option("-p,--prime", em_p)->required();
  cmd_em->add_option("--defect-group", em_defect_names,
                     "named subgroup from the group file, user-asserted defect group");
  cmd_em->add_option("--defect-group-file", em_defect_files,
                     "group file with a user-asserted defect group");
  add_common(cmd_em, c_em);

  // pgroup-mh
  Common c_pg;
  std::string pg_family, pg_export, pg_group_file;
  uint64_t pg_p = 0, pg_r = 1;
  uint32_t pg_m = 1, pg_n = 1, pg_d = 1, pg_a = 1;
  CLI::App* cmd_pg = app.add_subcommand("pgroup-mh", "mh of a p-group family member");
  cmd_pg->add_option("--family", pg_family, "metacyclic | wreath");
  cmd_pg->add_option("--group-file", pg_group_file, "p-group given as a group file");
  cmd_pg->add_option("-p,--prime", pg_p)->required();
  cmd_pg->add_option("-m", pg_m, "metacyclic: order of x is p^m");
  cmd_pg->add_option("-n", pg_n, "metacyclic: order of y is p^n");
  cmd_pg->add_option("-r", pg_r, "metacyclic: action x^y = x^r");
  cmd_pg->add_option("-d", pg_d, "wreath: cyclic base order");
  cmd_pg->add_option("-a", pg_a, "wreath: symmetric top degree");
  cmd_pg->add_option("--export", pg_export, "also write the group file");
  add_common(cmd_pg, c_pg);

  // core
  Common c_core;
  std::string core_part;
  uint32_t core_ell = 2;
  CLI::App* cmd_core = app.add_subcommand("core", "ell-core of a partition");
  cmd_core->add_option("-l,--ell", core_ell)->required();
  cmd_core->add_option("--partition", core_part, "comma-separated parts, e.g. 4,2")->required();
  add_common(cmd_core, c_core);

  // core-exists
  Common c_ce;
  uint32_t ce_ell = 2, ce_a = 2;
  CLI::App* cmd_ce = app.add_subcommand("core-exists",
                                        "search for an ell-core of size b, ell <= b < 2 ell, b = a mod ell");
  cmd_ce->add_option("-l,--ell", ce_ell)->required();
  cmd_ce->add_option("-a", ce_a)->required();
  add_common(cmd_ce, c_ce);

  // unipdef-check
  Common c_ud;
  uint32_t ud_d = 1, ud_a = 1;
  uint64_t ud_ell = 2;
  CLI::App* cmd_ud = app.add_subcommand("unipdef-check",
                                        "search C_d wr S_a for a character of degree ell-part exactly ell");
  cmd_ud->add_option("-d", ud_d)->required();
  cmd_ud->add_option("-a", ud_a)->required();
  cmd_ud->add_option("-l,--ell", ud_ell)->required();
  add_common(cmd_ud, c_ud);

  // run-corpus
  Common c_rc;
  std::string rc_dir;
  unsigned rc_workers = 4;
  CLI::App* cmd_rc = app.add_subcommand("run-corpus", "run every corpus entry in a directory");
  cmd_rc->add_option("directory", rc_dir)->required();
  cmd_rc->add_option("--workers", rc_workers, "worker pool size");
  add_common(cmd_rc, c_rc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return kExitUsage;
  }

  auto resolve_cap = [&](Common& c) {
    if (c.cap == kDefaultEnumerationCap) c.cap = default_cap;
  };
  bool json_out = false;
  try {
    if (cmd_table->parsed()) {
      resolve_cap(c_table);
      json_out = c_table.json_out;
      LoadedSource src = load_source(table_input, c_table.cap);
      if (!table_output.empty()) export_table_file(src.table, table_output);
      if (c_table.json_out) {
        std::cout << export_table_json(src.table) << "\n";
      } else {
        std::cout << src.table.group_name << ": |G| = " << src.table.order
                  << ", exponent " << src.table.exponent << ", "
                  << src.table.num_classes() << " classes\ndegrees:";
        for (uint64_t d : src.table.degrees) std::cout << " " << d;
        std::cout << "\n";
        for (const auto& row : src.table.irreducibles) {
          for (const Cyclotomic& v : row) std::cout << v.str() << "\t";
          std::cout << "\n";
        }
      }
    } else if (cmd_blocks->parsed()) {
      resolve_cap(c_blocks);
      json_out = c_blocks.json_out;
      LoadedSource src = load_source(blocks_input, c_blocks.cap);
      BlockPartition bp = block_partition(src.table, blocks_p);
      json out = block_partition_json(src.table, bp);
      if (c_blocks.json_out) {
        std::cout << out.dump(1) << "\n";
      } else {
        std::cout << src.table.group_name << " p=" << blocks_p << ": " << bp.count()
                  << " block(s)\n";
        for (size_t b = 0; b < bp.count(); ++b) {
          std::cout << "  block " << b << (int(b) == bp.principal ? " (principal)" : "")
                    << " defect " << bp.defects[b] << " mh "
                    << mh_json(bp.mh[b]).dump() << " degrees";
          for (int chi : bp.blocks[b])
            std::cout << " " << src.table.degrees[chi] << "(h" << bp.heights[chi] << ")";
          std::cout << "\n";
        }
      }
    } else if (cmd_mh->parsed()) {
      resolve_cap(c_mh);
      json_out = c_mh.json_out;
      LoadedSource src = load_source(mh_input, c_mh.cap);
      BlockPartition bp = block_partition(src.table, mh_p);
      if (c_mh.json_out) {
        json out = json::array();
        for (size_t b = 0; b < bp.count(); ++b) out.push_back(mh_json(bp.mh[b]));
        std::cout << json{{"group", src.table.group_name}, {"p", mh_p}, {"mh", out}}.dump(1)
                  << "\n";
      } else {
        for (size_t b = 0; b < bp.count(); ++b)
          std::cout << "block " << b << ": mh = " << mh_json(bp.mh[b]).dump() << "\n";
      }
    } else if (cmd_em->parsed()) {
      resolve_cap(c_em);
      json_out = c_em.json_out;
      LoadedSource src = load_source(em_input, c_em.cap);
      std::vector<PermGroup> defect_groups;
      for (const std::string& name : em_defect_names) {
        auto it = src.subgroups.find(name);
        if (it == src.subgroups.end())
          fail("FormatError", "no subgroup named " + name + " in " + em_input);
        defect_groups.push_back(it->second);
      }
      for (const std::string& file : em_defect_files)
        defect_groups.push_back(read_group_file(file).group);
      for (PermGroup& dg : defect_groups) dg.enumerate(c_em.cap);
      EMReport rep = verify_em(src.table, src.group ? &*src.group : nullptr, em_p,
                               defect_groups, c_em.cap);
      if (c_em.json_out)
        std::cout << em_report_json(rep).dump(1) << "\n";
      else
        std::cout << em_report_text(rep);
      return rep.exit_code;
    } else if (cmd_pg->parsed()) {
      resolve_cap(c_pg);
      json_out = c_pg.json_out;
      PermGroup g;
      if (!pg_group_file.empty()) {
        g = read_group_file(pg_group_file).group;
        g.enumerate(c_pg.cap);
      } else if (pg_family == "metacyclic") {
        g = metacyclic({pg_p, pg_m, pg_n, pg_r}, c_pg.cap);
      } else if (pg_family == "wreath") {
        g = wreath_cyclic_symmetric(pg_d, pg_a, c_pg.cap);
      } else {
        fail("FormatError", "choose --family metacyclic|wreath or --group-file");
      }
      if (!pg_export.empty()) {
        std::ofstream out(pg_export);
        out << write_group_json(g) << "\n";
      }
      std::optional<uint32_t> mh = mh_pgroup(g, pg_p, c_pg.cap);
      if (c_pg.json_out)
        std::cout << json{{"group", g.name()}, {"order", g.order()}, {"p", pg_p},
                          {"mh", mh_json(mh)}}
                         .dump(1)
                  << "\n";
      else
        std::cout << g.name() << " |P| = " << g.order() << " mh = " << mh_json(mh).dump()
                  << "\n";
    } else if (cmd_core->parsed()) {
      json_out = c_core.json_out;
      Partition p = parse_partition(core_part);
      Partition core = ell_core(p, core_ell);
      if (c_core.json_out)
        std::cout << json{{"partition", p}, {"ell", core_ell}, {"core", core},
                          {"is_core", is_ell_core(p, core_ell)}}
                         .dump(1)
                  << "\n";
      else
        std::cout << part_str(p) << " has " << core_ell << "-core " << part_str(core)
                  << "\n";
    } else if (cmd_ce->parsed()) {
      json_out = c_ce.json_out;
      auto found = core_existence(ce_a, ce_ell);
      if (c_ce.json_out) {
        json out{{"ell", ce_ell}, {"a", ce_a}, {"exists", found.has_value()}};
        if (found) {
          out["b"] = found->first;
          out["core"] = found->second;
        }
        std::cout << out.dump(1) << "\n";
      } else if (found) {
        std::cout << "core of size " << found->first << ": " << part_str(found->second)
                  << "\n";
      } else {
        std::cout << "none\n";
      }
      return 0;
    } else if (cmd_ud->parsed()) {
      json_out = c_ud.json_out;
      auto witness = check_unipdef(ud_d, ud_a, ud_ell);
      if (c_ud.json_out) {
        json out{{"d", ud_d}, {"a", ud_a}, {"ell", ud_ell}, {"witness", witness.has_value()}};
        if (witness) {
          json label = json::array();
          for (const Partition& p : *witness) label.push_back(p);
          out["label"] = label;
          out["degree"] = wreath_degree(*witness).get_str();
        }
        std::cout << out.dump(1) << "\n";
      } else if (witness) {
        std::cout << "witness of degree " << wreath_degree(*witness).get_str() << ":";
        for (const Partition& p : *witness) std::cout << " " << part_str(p);
        std::cout << "\n";
      } else {
        std::cout << "no witness\n";
      }
      return 0;
    } else if (cmd_rc->parsed()) {
      resolve_cap(c_rc);
      json_out = c_rc.json_out;
      CorpusReport rep = run_corpus(rc_dir, rc_workers, c_rc.cap);
      if (c_rc.json_out)
        std::cout << rep.to_json().dump(1) << "\n";
      else
        std::cout << rep.summary_text();
      return rep.exit_code;
    }
  } catch (const Error& ex) {
    if (json_out)
      std::cerr << json{{"error", ex.code()}, {"message", ex.what()}}.dump() << "\n";
    else
      std::cerr << "error: " << ex.what() << "\n";
    return kExitError;
  } catch (const std::exception& ex) {
    if (json_out)
      std::cerr << json{{"error", "InternalError"}, {"message", ex.what()}}.dump() << "\n";
    else
      std::cerr << "error: " << ex.what() << "\n";
    return kExitError;
  }
  return 0;
}
