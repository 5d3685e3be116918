#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "prmw/verification.hpp"

using namespace prmw;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const char* name) {
    path = (std::filesystem::temp_directory_path() / name).string();
    std::filesystem::remove(path);
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("every lemma suite is green on its default grid") {
  for (const std::string& id : lemma_ids()) {
    CAPTURE(id);
    json grid = json::object();
    if (id == "splitting-5.1") grid = json{{"d", 2}, {"m", 2}, {"r", 2}, {"q", 3}};  // small variant here
    SweepReport rep = run_lemma_suite(id, grid);
    CHECK(rep.ok());
    CHECK(rep.grid_size > 0);
    CHECK(rep.failures.empty());
  }
}

TEST_CASE("hypothesis-violating grids are rejected, not skipped") {
  CHECK_THROWS_AS(run_lemma_suite("sum-Hsk", json{{"q_offsets", std::vector<int>{0}}}), std::invalid_argument);
  CHECK_THROWS_AS(run_lemma_suite("r-from-decomposition", json{{"q_offsets", std::vector<int>{0}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_lemma_suite("splitting-5.1", json{{"d", 3}, {"m", 2}, {"r", 2}, {"q", 3}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_lemma_suite("no-such-lemma"), std::invalid_argument);
}

TEST_CASE("a false statement produces a failing report with the offending tuple") {
  // binomial-inequality run with a grid of size zero is impossible, so check
  // the failure plumbing directly instead.
  SweepReport rep;
  rep.target = "demo";
  rep.check(1 + 1 == 3, json{{"x", 1}}, "2", "3");
  CHECK(!rep.ok());
  CHECK(rep.failures.size() == 1);
  CHECK(rep.failures[0].params.at("x") == 1);
}

TEST_CASE("comparison sweep: affine and projective at (3,2,2)") {
  FieldSpec f3(3);
  SweepReport pa = compare_formula_oracle(2, 2, f3, 1, -1, SpaceKind::affine);
  CHECK(pa.ok());
  CHECK(pa.grid_size == 6);
  CHECK(pa.exhaustive);
  SweepReport pp = compare_formula_oracle(2, 2, f3, 1, -1, SpaceKind::projective);
  CHECK(pp.ok());
  CHECK(pp.rows.size() == 6);
  CHECK(pp.rows[0].at("e_bdg") == "7");
  CHECK(pp.rows[0].at("oracle") == "7");
  CHECK_THROWS_AS(compare_formula_oracle(2, 2, f3, 0, 3, SpaceKind::affine), std::invalid_argument);
}

TEST_CASE("csv contract") {
  FieldSpec f3(3);
  SweepReport rep = compare_formula_oracle(2, 2, f3, 1, 2, SpaceKind::projective);
  std::string csv = to_csv(rep);
  const std::string header = "q,d,m,r,l,c,j,H_j,pi term,e_bdg,e_bt,e_affine,oracle,exhaustive,threshold_main,threshold_l1";
  CHECK(csv.substr(0, header.size()) == header);
  CHECK(csv[header.size()] == '\n');
  // one line per row plus the header
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  // empty report: header only
  SweepReport empty;
  std::string ecsv = to_csv(empty);
  CHECK(ecsv == header + "\n");
}

TEST_CASE("report serialization round trips and is byte-stable") {
  FieldSpec f3(3);
  SweepReport a = compare_formula_oracle(2, 2, f3, 1, 3, SpaceKind::projective);
  SweepReport b = compare_formula_oracle(2, 2, f3, 1, 3, SpaceKind::projective);
  CHECK(a.to_canonical_json().dump(2) == b.to_canonical_json().dump(2));

  SweepReport back = SweepReport::from_json(a.to_canonical_json());
  CHECK(back.to_canonical_json().dump(2) == a.to_canonical_json().dump(2));
}

TEST_CASE("emit_table writes csv and json; json round-trips through the cache loader") {
  FieldSpec f3(3);
  SweepReport rep = compare_formula_oracle(2, 2, f3, 1, 2, SpaceKind::projective);

  TempFile csv("prmw_test_table.csv");
  emit_table(rep, TableFormat::csv, csv.path);
  std::ifstream in(csv.path);
  std::string first_line;
  std::getline(in, first_line);
  CHECK(first_line == "q,d,m,r,l,c,j,H_j,pi term,e_bdg,e_bt,e_affine,oracle,exhaustive,threshold_main,threshold_l1");

  TempFile jf("prmw_test_table.json");
  emit_table(rep, TableFormat::json_format, jf.path);
  std::ifstream jin(jf.path);
  json parsed = json::parse(jin);
  CHECK(SweepReport::from_json(parsed).to_canonical_json() == rep.to_canonical_json());
}

TEST_CASE("results cache: append-only, persistent, values never change") {
  TempFile cache_file("prmw_test_cache.ldjson");
  json params{{"q", 3}, {"d", 2}, {"m", 2}, {"r", 1}};
  {
    ResultsCache cache(cache_file.path);
    CHECK(!cache.lookup("max_common_zeros", params));
    cache.append("max_common_zeros", params, json{{"value", "7"}});
    auto hit = cache.lookup("max_common_zeros", params);
    REQUIRE(hit.has_value());
    CHECK(hit->at("value") == "7");
  }
  {
    // reload from disk
    ResultsCache cache(cache_file.path);
    CHECK(cache.size() == 1);
    auto hit = cache.lookup("max_common_zeros", params);
    REQUIRE(hit.has_value());
    CHECK(hit->at("value") == "7");

    // recomputation equals the cached value
    FieldSpec f3(3);
    OracleResult res = max_common_zeros(2, 2, 1, f3, SpaceKind::projective);
    CHECK(std::to_string(res.value) == hit->at("value").get<std::string>());
  }
}

TEST_CASE("cache hits never change values across a populate/reload/verify cycle") {
  TempFile cache_file("prmw_test_cache_many.ldjson");
  FieldSpec f3(3);
  {
    ResultsCache cache(cache_file.path);
    for (const char* kind : {"projective", "affine"})
      for (int r = 1; r <= 6; ++r) {
        OracleResult res = max_common_zeros(2, 2, r, f3, kind_from_name(kind));
        cache.append("max_common_zeros", json{{"q", 3}, {"d", 2}, {"m", 2}, {"r", r}, {"kind", kind}},
                     json{{"value", std::to_string(res.value)}});
      }
  }
  ResultsCache cache(cache_file.path);
  CHECK(cache.size() == 12);
  for (const char* kind : {"projective", "affine"})
    for (int r = 1; r <= 6; ++r) {
      auto hit = cache.lookup("max_common_zeros", json{{"q", 3}, {"d", 2}, {"m", 2}, {"r", r}, {"kind", kind}});
      REQUIRE(hit.has_value());
      OracleResult res = max_common_zeros(2, 2, r, f3, kind_from_name(kind));
      REQUIRE(hit->at("value").get<std::string>() == std::to_string(res.value));
    }
}

TEST_CASE("below the q >= d+1 hypothesis nothing is asserted, data is recorded") {
  // q = 2 < d+1 = 3: the formulas are outside their proven regime there, so
  // the comparison records the oracle values without failing on mismatches.
  FieldSpec f2(2);
  SweepReport rep = compare_formula_oracle(2, 2, f2, 1, -1, SpaceKind::projective);
  CHECK(rep.ok());
  CHECK(rep.rows.size() == 6);
  for (const json& row : rep.rows) CHECK(!row.at("oracle").get<std::string>().empty());
}

TEST_CASE("proven-regime predicate") {
  CHECK(bdg_proven(2, 2, 5, 3));        // d = 2
  CHECK(bdg_proven(5, 1, 3, 7));        // m = 1
  CHECK(bdg_proven(1, 4, 3, 2));        // d = 1
  CHECK(bdg_proven(3, 3, 4, 4));        // r <= m+1
  CHECK(bdg_proven(3, 3, 19, 4));       // l = m: r > C(6,3)-C(4,3) = 16
  CHECK(!bdg_proven(3, 3, 12, 4));      // mid-range small q: not covered
  CHECK(!bdg_proven(2, 2, 1, 2));       // q < d+1
  CHECK(bdg_proven(3, 3, 12, 1000000)); // huge q: main theorem threshold
}

TEST_CASE("sampled sweeps with the same seed are byte-identical too") {
  FieldSpec f3(3);
  OracleOptions s;
  s.mode = OracleOptions::Mode::sample;
  s.seed = 99;
  s.samples = 200;
  SweepReport a = compare_formula_oracle(2, 2, f3, 1, 3, SpaceKind::projective, s);
  SweepReport b = compare_formula_oracle(2, 2, f3, 1, 3, SpaceKind::projective, s);
  CHECK(!a.exhaustive);
  CHECK(a.to_canonical_json().dump(2) == b.to_canonical_json().dump(2));
}

TEST_CASE("determinism across worker counts (byte-identical canonical reports)") {
  FieldSpec f3(3);
  std::string base;
  for (int w : {1, 2, 5}) {
    OracleOptions o;
    o.workers = w;
    SweepReport rep = compare_formula_oracle(2, 2, f3, 1, 4, SpaceKind::projective, o);
    std::string bytes = rep.to_canonical_json().dump(2);
    if (base.empty())
      base = bytes;
    else
      CHECK(bytes == base);
  }
}
