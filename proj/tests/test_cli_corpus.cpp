#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "blockheight/corpus.hpp"
#include "blockheight/errors.hpp"

using namespace blockheight;

static std::string corpus_root = "corpus";

TEST_CASE("corpus runs clean and deterministically") {
  CorpusReport a = run_corpus(corpus_root, 4);
  CHECK(a.exit_code == 0);
  CHECK(!a.results.empty());
  // byte-identical JSON across runs and worker counts
  CorpusReport b = run_corpus(corpus_root, 1);
  CHECK(a.to_json().dump(1) == b.to_json().dump(1));
  CorpusReport c = run_corpus(corpus_root, 8);
  CHECK(a.to_json().dump(1) == c.to_json().dump(1));
}

TEST_CASE("empty corpus directory gives an empty report with exit 0") {
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "blockheight_empty_corpus";
  std::filesystem::create_directories(dir);
  CorpusReport rep = run_corpus(dir.string(), 2);
  CHECK(rep.results.empty());
  CHECK(rep.exit_code == 0);
}

TEST_CASE("expectation mismatches are reported with nonzero exit") {
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "blockheight_bad_corpus";
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "bad.json");
  out << R"({"name": "S4wrong",
             "group": {"name": "S4", "degree": 4,
                       "generators": [[2,1,3,4],[2,3,4,1]]},
             "primes": [2],
             "expect": {"2": {"blocks": 7}}})";
  out.close();
  CorpusReport rep = run_corpus(dir.string(), 1);
  REQUIRE(rep.results.size() == 1);
  CHECK(!rep.results[0].expectation_failures.empty());
  CHECK(rep.exit_code == 2);
}

TEST_CASE("a broken entry is recorded and the run continues") {
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "blockheight_err_corpus";
  std::filesystem::create_directories(dir);
  {
    std::ofstream bad(dir / "a_bad.json");
    bad << R"({"name": "nosource", "primes": [2]})";
  }
  {
    std::ofstream good(dir / "b_good.json");
    good << R"({"name": "S3",
                "group": {"name": "S3", "degree": 3, "generators": [[2,1,3],[2,3,1]]},
                "primes": [2]})";
  }
  CorpusReport rep = run_corpus(dir.string(), 1);
  REQUIRE(rep.results.size() == 2);
  CHECK(rep.exit_code == 65);
  int errored = 0, fine = 0;
  for (const CorpusEntryResult& r : rep.results)
    r.errored ? ++errored : ++fine;
  CHECK(errored == 1);
  CHECK(fine == 1);
}

int main(int argc, char** argv) {
  if (argc > 1) corpus_root = argv[1];
  doctest::Context ctx;
  return ctx.run();
}
