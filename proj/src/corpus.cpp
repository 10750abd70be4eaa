#include "blockheight/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "blockheight/chartable.hpp"
#include "blockheight/errors.hpp"
#include "blockheight/groupio.hpp"
#include "blockheight/pgroups.hpp"

namespace blockheight {

using nlohmann::json;

namespace {

json mh_json(const std::optional<uint32_t>& mh) {
  return mh ? json(*mh) : json("inf");
}

} // namespace

json em_report_json(const EMReport& rep) {
  json blocks = json::array();
  for (const EMBlockReport& br : rep.blocks) {
    json jb{{"characters", br.characters},
            {"degrees", br.degrees},
            {"defect", br.defect},
            {"heights", br.heights},
            {"mh", mh_json(br.mh_block)},
            {"defect_group", br.defect_group_status},
            {"principal", br.principal},
            {"verdict", br.verdict}};
    jb["mh_defect_group"] = br.mh_defect ? mh_json(*br.mh_defect) : json(nullptr);
    blocks.push_back(jb);
  }
  return json{{"group", rep.group_name},
              {"order", rep.order},
              {"p", rep.p},
              {"blocks", blocks},
              {"exit_code", rep.exit_code}};
}

std::string em_report_text(const EMReport& rep) {
  std::ostringstream os;
  os << rep.group_name << " (|G| = " << rep.order << "), p = " << rep.p << ": "
     << rep.blocks.size() << " block(s)\n";
  for (size_t b = 0; b < rep.blocks.size(); ++b) {
    const EMBlockReport& br = rep.blocks[b];
    os << "  block " << b << (br.principal ? " (principal)" : "") << ": defect "
       << br.defect << ", degrees {";
    for (size_t i = 0; i < br.degrees.size(); ++i)
      os << (i ? "," : "") << br.degrees[i];
    os << "}, mh(B) = " << (br.mh_block ? std::to_string(*br.mh_block) : "inf");
    os << ", D " << br.defect_group_status;
    if (br.mh_defect)
      os << ", mh(D) = " << (*br.mh_defect ? std::to_string(**br.mh_defect) : "inf");
    os << " -> " << br.verdict << "\n";
  }
  return os.str();
}

json block_partition_json(const CharacterTable& t, const BlockPartition& bp) {
  json blocks = json::array();
  for (size_t b = 0; b < bp.count(); ++b) {
    json jb{{"characters", bp.blocks[b]}, {"defect", bp.defects[b]}};
    json degs = json::array(), heights = json::array();
    for (int chi : bp.blocks[b]) {
      degs.push_back(t.degrees[chi]);
      heights.push_back(bp.heights[chi]);
    }
    jb["degrees"] = degs;
    jb["heights"] = heights;
    jb["mh"] = mh_json(bp.mh[b]);
    jb["principal"] = (static_cast<int>(b) == bp.principal);
    blocks.push_back(jb);
  }
  return json{{"group", t.group_name}, {"order", t.order}, {"p", bp.p}, {"blocks", blocks}};
}

namespace {

struct ParsedEntry {
  std::string name;
  std::optional<PermGroup> group;
  std::optional<CharacterTable> table;
  std::vector<PermGroup> defect_groups;
  std::vector<uint64_t> primes;
  json expect; // keyed by prime as string
};

ParsedEntry parse_entry(const std::filesystem::path& path, uint64_t cap) {
  std::ifstream in(path);
  if (!in) fail("FormatError", "cannot read " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& ex) {
    fail("FormatError", "bad corpus entry " + path.string() + ": " + ex.what());
  }
  ParsedEntry e;
  try {
    e.name = j.at("name").get<std::string>();
    int sources = j.contains("group") + j.contains("group_file") +
                  j.contains("table_file") + j.contains("family");
    if (sources != 1)
      fail("FormatError", "entry " + e.name + " must name exactly one source");
    auto base = path.parent_path();
    std::map<std::string, PermGroup> named_subgroups;
    if (j.contains("group")) {
      GroupFile gf = parse_group_json(j.at("group").dump());
      e.group = std::move(gf.group);
      named_subgroups = std::move(gf.subgroups);
    } else if (j.contains("group_file")) {
      GroupFile gf = read_group_file((base / j.at("group_file").get<std::string>()).string());
      e.group = std::move(gf.group);
      named_subgroups = std::move(gf.subgroups);
    } else if (j.contains("table_file")) {
      e.table = import_table_file((base / j.at("table_file").get<std::string>()).string());
    } else {
      const json& fam = j.at("family");
      std::string type = fam.at("type").get<std::string>();
      if (type == "metacyclic") {
        MetacyclicSpec spec{fam.at("p").get<uint64_t>(), fam.at("m").get<uint32_t>(),
                            fam.at("n").get<uint32_t>(), fam.at("r").get<uint64_t>()};
        e.group = metacyclic(spec, cap);
      } else if (type == "wreath") {
        e.group = wreath_cyclic_symmetric(fam.at("d").get<uint32_t>(),
                                          fam.at("a").get<uint32_t>(), cap);
      } else {
        fail("FormatError", "unknown family type " + type);
      }
    }
    if (e.group) e.group->set_name(e.name);
    if (j.contains("defect_groups")) {
      for (const json& sel : j.at("defect_groups")) {
        if (sel.is_string()) {
          auto it = named_subgroups.find(sel.get<std::string>());
          if (it == named_subgroups.end())
            fail("FormatError", "defect group name not found: " + sel.get<std::string>());
          e.defect_groups.push_back(it->second);
        } else if (sel.is_object() && sel.contains("file")) {
          e.defect_groups.push_back(
              read_group_file((base / sel.at("file").get<std::string>()).string()).group);
        } else {
          GroupFile gf = parse_group_json(sel.dump());
          e.defect_groups.push_back(std::move(gf.group));
        }
      }
    }
    for (const json& p : j.at("primes")) e.primes.push_back(p.get<uint64_t>());
    if (j.contains("expect")) e.expect = j.at("expect");
  } catch (const json::exception& ex) {
    fail("FormatError", "bad corpus entry " + path.string() + ": " + ex.what());
  }
  return e;
}

std::optional<uint32_t> parse_mh(const json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "inf") return std::nullopt;
    return static_cast<uint32_t>(std::stoul(s));
  }
  return v.get<uint32_t>();
}

void check_expectations(const json& expect, const EMReport& rep,
                        std::vector<std::string>& failures) {
  auto complain = [&](const std::string& what) { failures.push_back(what); };
  if (expect.contains("blocks") &&
      expect.at("blocks").get<size_t>() != rep.blocks.size())
    complain("block count " + std::to_string(rep.blocks.size()) + " != expected " +
             expect.at("blocks").dump());
  if (expect.contains("mh")) {
    const json& want = expect.at("mh");
    if (want.size() != rep.blocks.size()) {
      complain("mh list length mismatch");
    } else {
      for (size_t b = 0; b < rep.blocks.size(); ++b)
        if (parse_mh(want[b]) != rep.blocks[b].mh_block)
          complain("mh of block " + std::to_string(b) + " is " +
                   mh_json(rep.blocks[b].mh_block).dump() + ", expected " + want[b].dump());
    }
  }
  if (expect.contains("verdicts")) {
    std::string want = expect.at("verdicts").get<std::string>();
    for (size_t b = 0; b < rep.blocks.size(); ++b)
      if (rep.blocks[b].verdict != want)
        complain("verdict of block " + std::to_string(b) + " is '" +
                 rep.blocks[b].verdict + "', expected '" + want + "'");
  }
  if (expect.contains("principal")) {
    const json& want = expect.at("principal");
    const EMBlockReport* pb = nullptr;
    for (const EMBlockReport& br : rep.blocks)
      if (br.principal) pb = &br;
    if (!pb) {
      complain("no principal block found");
      return;
    }
    if (want.contains("defect") && want.at("defect").get<uint32_t>() != pb->defect)
      complain("principal defect is " + std::to_string(pb->defect) + ", expected " +
               want.at("defect").dump());
    if (want.contains("mh") && parse_mh(want.at("mh")) != pb->mh_block)
      complain("principal mh is " + mh_json(pb->mh_block).dump() + ", expected " +
               want.at("mh").dump());
    if (want.contains("mh_count")) {
      uint32_t count = 0;
      if (pb->mh_block)
        for (uint32_t h : pb->heights)
          if (h == *pb->mh_block) ++count;
      if (want.at("mh_count").get<uint32_t>() != count)
        complain("principal mh attained by " + std::to_string(count) +
                 " characters, expected " + want.at("mh_count").dump());
    }
  }
}

CorpusEntryResult run_one(const ParsedEntry& e, uint64_t p, uint64_t cap) {
  CorpusEntryResult r;
  r.name = e.name;
  r.p = p;
  try {
    CharacterTable table;
    const PermGroup* gp = nullptr;
    PermGroup owned;
    if (e.group) {
      owned = *e.group;
      owned.enumerate(cap);
      table = dixon_schneider(owned);
      gp = &owned;
    } else {
      table = *e.table;
    }
    std::vector<PermGroup> defect_groups = e.defect_groups;
    for (PermGroup& dg : defect_groups) dg.enumerate(cap);
    EMReport rep = verify_em(table, gp, p, defect_groups, cap);
    r.report = em_report_json(rep);
    r.worst_verdict = "holds";
    for (const EMBlockReport& br : rep.blocks) {
      if (br.verdict == "mismatch") r.worst_verdict = "mismatch";
      else if (br.verdict != "holds" && r.worst_verdict == "holds") r.worst_verdict = "open";
    }
    std::string key = std::to_string(p);
    if (e.expect.contains(key))
      check_expectations(e.expect.at(key), rep, r.expectation_failures);
  } catch (const std::exception& ex) {
    r.errored = true;
    r.error = ex.what();
    r.worst_verdict = "error";
  }
  return r;
}

} // namespace

json CorpusReport::to_json() const {
  json entries = json::array();
  for (const CorpusEntryResult& r : results) {
    json je{{"name", r.name}, {"p", r.p}};
    if (r.errored) {
      je["error"] = r.error;
    } else {
      je["report"] = r.report;
      je["expectation_failures"] = r.expectation_failures;
    }
    je["worst_verdict"] = r.worst_verdict;
    entries.push_back(je);
  }
  return json{{"entries", entries}, {"exit_code", exit_code}};
}

std::string CorpusReport::summary_text() const {
  std::ostringstream os;
  os << "corpus: " << results.size() << " (group, prime) runs\n";
  for (const CorpusEntryResult& r : results) {
    os << "  " << r.name << " p=" << r.p << ": " << r.worst_verdict;
    if (!r.expectation_failures.empty()) {
      os << "  EXPECTATIONS FAILED:";
      for (const std::string& f : r.expectation_failures) os << " [" << f << "]";
    }
    if (r.errored) os << "  (" << r.error << ")";
    os << "\n";
  }
  os << "exit code " << exit_code << "\n";
  return os.str();
}

CorpusReport run_corpus(const std::string& directory, unsigned workers, uint64_t cap) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  if (!fs::exists(directory))
    fail("FormatError", "corpus directory does not exist: " + directory);
  for (const auto& de : fs::directory_iterator(directory))
    if (de.is_regular_file() && de.path().extension() == ".json")
      files.push_back(de.path());
  std::sort(files.begin(), files.end());

  struct Job {
    ParsedEntry entry;
    uint64_t p;
  };
  std::vector<Job> jobs;
  CorpusReport report;
  for (const fs::path& f : files) {
    try {
      ParsedEntry e = parse_entry(f, cap);
      for (uint64_t p : e.primes) jobs.push_back({e, p});
    } catch (const Error& ex) {
      CorpusEntryResult r;
      r.name = f.filename().string();
      r.errored = true;
      r.error = ex.what();
      r.worst_verdict = "error";
      report.results.push_back(std::move(r));
    }
  }

  std::vector<CorpusEntryResult> results(jobs.size());
  if (workers <= 1) {
    for (size_t i = 0; i < jobs.size(); ++i) results[i] = run_one(jobs[i].entry, jobs[i].p, cap);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= jobs.size()) return;
        results[i] = run_one(jobs[i].entry, jobs[i].p, cap);
      }
    };
    std::vector<std::future<void>> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.push_back(std::async(std::launch::async, worker));
    for (auto& fut : pool) fut.get();
  }
  for (CorpusEntryResult& r : results) report.results.push_back(std::move(r));

  for (const CorpusEntryResult& r : report.results) {
    if (r.errored)
      report.exit_code = 65;
    else if ((r.worst_verdict == "mismatch" || !r.expectation_failures.empty()) &&
             report.exit_code != 65)
      report.exit_code = 2;
  }
  return report;
}

} // namespace blockheight
