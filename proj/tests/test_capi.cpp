#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "governing/governing.h"
#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Ctx {
  gov_context* ctx = nullptr;
  explicit Ctx(const std::string& cache = "") { REQUIRE(gov_context_new(cache.empty() ? nullptr : cache.c_str(), &ctx) == GOV_OK); }
  ~Ctx() { gov_context_free(ctx); }
};

gov_status analyze(gov_context* ctx, const json& req, std::string& out) {
  char* s = nullptr;
  gov_status st = gov_analyze(ctx, req.dump().c_str(), &s);
  out = s ? s : "";
  gov_string_free(s);
  return st;
}

json analyze_ok(gov_context* ctx, const json& req) {
  std::string out;
  gov_status st = analyze(ctx, req, out);
  INFO(req.dump(), " ", (gov_last_error() ? gov_last_error() : ""));
  REQUIRE(st == GOV_OK);
  CHECK(gov_last_error() == nullptr);
  return json::parse(out);
}

gov_status analyze_status(const json& req) {
  Ctx c;
  std::string out;
  return analyze(c.ctx, req, out);
}

fs::path fresh_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("gov-test-" + name + "-" + std::to_string(std::random_device{}()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(gov_version()).size() > 0);
  CHECK(std::string(gov_status_name(GOV_OK)) == "Ok");
  CHECK(std::string(gov_status_name(GOV_ARCHIMEDEAN_REQUIRES_P2)) == "ArchimedeanRequiresP2");
  CHECK(std::string(gov_status_name(GOV_LEDGER_MISMATCH)) == "LedgerMismatch");
  CHECK(std::string(gov_status_name(GOV_INTERNAL)) == "Internal");
  CHECK(gov_status_is_invariant_failure(GOV_DIMENSION_MISMATCH));
  CHECK(gov_status_is_invariant_failure(GOV_LEDGER_MISMATCH));
  CHECK_FALSE(gov_status_is_invariant_failure(GOV_WILD_PLACE));
}

TEST_CASE("D = 21 over Q") {
  Ctx c;
  json r = analyze_ok(c.ctx, {{"field", "Q"}, {"p", 2}, {"places", "3,7"}, {"verify", true}, {"subsets", true}});
  CHECK(r["v"] == 1);
  CHECK(r["exists"] == true);
  CHECK(r["counts"]["relations"] == 1);
  CHECK(r["counts"]["cohomology"] == 1);
  CHECK(r["counts"]["oracle"] == 1);
  CHECK(r["field"]["kind"] == "rational");
  CHECK(r["basis"]["d"] == 1);
  CHECK(r["koch"].size() == 4);
  CHECK(r["ledger"]["value"] == r["relations"]["s"]);
  // 3 * 7 = 21 = 1 mod 4, while 3 * 5 = 15 is not
  json r2 = analyze_ok(c.ctx, {{"field", "Q"}, {"p", 2}, {"places", "3,5"}});
  CHECK(r2["exists"] == false);
  CHECK(r2["counts"]["relations"] == 0);
}

TEST_CASE("top-level keys") {
  Ctx c;
  json r = analyze_ok(c.ctx, {{"field", "d=-5"}, {"p", 2}, {"places", "3.1,7.2"}, {"emit_matrix", true}});
  for (const char* k : {"v", "field", "p", "places", "basis", "matrix", "relations", "counts", "ledger", "exists"})
    CHECK_MESSAGE(r.contains(k), k);
  for (const char* k : {"kind", "d", "disc", "r1", "r2", "delta"}) CHECK(r["field"].contains(k));
  for (const char* k : {"r", "s", "I", "D", "basis"}) CHECK(r["relations"].contains(k));
  for (const char* k : {"mN", "mM", "value"}) CHECK(r["ledger"].contains(k));
  CHECK(r["field"]["disc"] == -20);
  CHECK(r["matrix"]["columns"].size() == 2);
  CHECK_FALSE(r.contains("koch"));
}

TEST_CASE("d = -23, p = 3: split l = 1 mod 3 with vanishing symbol") {
  Ctx c;
  // 151 is the smallest such l; both branches work
  for (const char* v : {"151.1", "151.2"}) {
    json r = analyze_ok(c.ctx, {{"field", "d=-23"}, {"p", 3}, {"places", v}, {"emit_matrix", true}, {"verify", true}});
    CHECK(r["exists"] == true);
    CHECK(r["matrix"]["columns"][0][0] == 0);
    CHECK(r["counts"]["relations"] == 2);
  }
  for (const char* v : {"13.1", "31.2", "73.1", "127.1", "139.2"}) {
    json r = analyze_ok(c.ctx, {{"field", "d=-23"}, {"p", 3}, {"places", v}});
    CHECK(r["exists"] == false);
  }
}

TEST_CASE("validation errors") {
  CHECK(analyze_status({{"field", "Q"}, {"p", 3}, {"places", "inf"}}) == GOV_ARCHIMEDEAN_REQUIRES_P2);
  // archimedean check comes before place parsing
  CHECK(analyze_status({{"field", "Q"}, {"p", 3}, {"places", "inf.7,xyz"}}) == GOV_ARCHIMEDEAN_REQUIRES_P2);
  CHECK(analyze_status({{"field", "Q"}, {"p", 3}, {"places", "3"}}) == GOV_WILD_PLACE);
  CHECK(analyze_status({{"field", "Q"}, {"p", 3}, {"places", "5"}}) == GOV_DELTA_ZERO);
  CHECK(analyze_status({{"field", "Q"}, {"p", 2}, {"places", "3,3"}}) == GOV_DUPLICATE_PLACE);
  CHECK(analyze_status({{"field", "Q"}, {"p", 4}, {"places", "5"}}) == GOV_NOT_PRIME);
  CHECK(analyze_status({{"field", "d=12"}, {"p", 2}, {"places", "3"}}) == GOV_NON_SQUAREFREE);
  CHECK(analyze_status({{"field", "K"}, {"p", 2}, {"places", "3"}}) == GOV_MALFORMED_FIELD);
  CHECK(analyze_status({{"field", "d=-5"}, {"p", 2}, {"places", "3"}}) == GOV_AMBIGUOUS_PLACE);
  CHECK(analyze_status({{"field", "Q"}, {"p", 2}, {"places", "3,5,7"}, {"cap", 2}}) == GOV_SET_TOO_LARGE);
  CHECK(analyze_status({{"field", "Q"}, {"p", 2}, {"colour", "red"}}) == GOV_INVALID_ARGUMENT);
  Ctx c;
  char* out = nullptr;
  CHECK(gov_analyze(c.ctx, "{not json", &out) == GOV_INVALID_ARGUMENT);
  CHECK(out == nullptr);
  REQUIRE(gov_last_error() != nullptr);
  json e = json::parse(gov_last_error());
  CHECK(e["code"] == "InvalidArgument");
  CHECK(e["status"] == GOV_INVALID_ARGUMENT);
}

TEST_CASE("output is byte-identical across runs") {
  const json req{{"field", "d=-87"}, {"p", 3}, {"places", "7.1,13.2,19"}, {"emit_matrix", true}, {"subsets", true}};
  std::string a, b;
  {
    Ctx c;
    REQUIRE(analyze(c.ctx, req, a) == GOV_OK);
  }
  {
    Ctx c;
    REQUIRE(analyze(c.ctx, req, b) == GOV_OK);
  }
  CHECK(a == b);
}

TEST_CASE("cold and warm cache agree") {
  const fs::path dir = fresh_dir("warm");
  const json req{{"field", "d=-23"}, {"p", 3}, {"places", "151.1,13.2"}, {"emit_matrix", true}, {"subsets", true}};
  std::string nocache, cold, warm;
  {
    Ctx c;
    REQUIRE(analyze(c.ctx, req, nocache) == GOV_OK);
  }
  Ctx c(dir.string());
  REQUIRE(analyze(c.ctx, req, cold) == GOV_OK);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  REQUIRE(files.size() == 1);
  const std::string stored = read_file(files[0]);
  json entry = json::parse(stored);
  CHECK(entry["format"] == 1);
  CHECK(entry["disc"] == -23);
  CHECK(entry["p"] == 3);
  REQUIRE(analyze(c.ctx, req, warm) == GOV_OK);
  CHECK(cold == warm);
  CHECK(cold == nocache);
  // a hit leaves the file alone
  CHECK(read_file(files[0]) == stored);
  // a subset of the stored avoidance set is still a hit
  json sub = req;
  sub["places"] = "13.2";
  std::string small;
  REQUIRE(analyze(c.ctx, sub, small) == GOV_OK);
  CHECK(read_file(files[0]) == stored);
  fs::remove_all(dir);
}

TEST_CASE("cache miss on uncovered places recomputes") {
  const fs::path dir = fresh_dir("miss");
  Ctx c(dir.string());
  std::string a, b, ref;
  REQUIRE(analyze(c.ctx, {{"field", "d=-23"}, {"p", 3}, {"places", "13.1"}}, a) == GOV_OK);
  const json req{{"field", "d=-23"}, {"p", 3}, {"places", "151.1,31.1"}};
  REQUIRE(analyze(c.ctx, req, b) == GOV_OK);
  {
    Ctx n;
    REQUIRE(analyze(n.ctx, req, ref) == GOV_OK);
  }
  CHECK(b == ref);
  fs::remove_all(dir);
}

TEST_CASE("corrupt cache entries are discarded") {
  const fs::path dir = fresh_dir("corrupt");
  const json req{{"field", "d=229"}, {"p", 3}, {"places", "7,13"}, {"subsets", true}};
  std::string ref;
  {
    Ctx n;
    REQUIRE(analyze(n.ctx, req, ref) == GOV_OK);
  }
  Ctx c(dir.string());
  std::string out;
  REQUIRE(analyze(c.ctx, req, out) == GOV_OK);
  fs::path file;
  for (const auto& e : fs::directory_iterator(dir)) file = e.path();
  REQUIRE(!file.empty());
  const std::string good = read_file(file);
  json entry = json::parse(good);

  std::vector<std::string> bad{"", "{", "[]", "null", "{\"format\": 99}", good.substr(0, good.size() / 2)};
  // structurally valid but inconsistent: tamper with a stored unit or basis value
  json t1 = entry;
  t1["units"]["fundamental_unit"] = "2";
  bad.push_back(t1.dump());
  json t2 = entry;
  if (!t2["basis"]["entries"].empty()) t2["basis"]["entries"][0]["value"] = "7";
  bad.push_back(t2.dump());
  json t4 = entry;
  t4["classes"]["invariants"] = json::array();
  t4["classes"]["generators"] = json::array();
  bad.push_back(t4.dump());
  json t3 = entry;
  t3["disc"] = 5;
  bad.push_back(t3.dump());
  for (const std::string& junk : bad) {
    {
      std::ofstream f(file, std::ios::trunc);
      f << junk;
    }
    std::string again;
    INFO(junk.substr(0, 80));
    REQUIRE(analyze(c.ctx, req, again) == GOV_OK);
    CHECK(again == ref);
    CHECK(json::parse(read_file(file))["format"] == 1);
  }
  fs::remove_all(dir);
}

TEST_CASE("field info") {
  gov_field* f = nullptr;
  REQUIRE(gov_field_new("d=-23", &f) == GOV_OK);
  char* s = nullptr;
  REQUIRE(gov_field_info(f, &s) == GOV_OK);
  json j = json::parse(s);
  gov_string_free(s);
  CHECK(j["disc"] == -23);
  CHECK(j["class_group"]["h"] == 3);
  CHECK(j["units"]["torsion_order"] == 2);
  gov_field_free(f);

  REQUIRE(gov_field_new("d=94", &f) == GOV_OK);
  REQUIRE(gov_field_info(f, &s) == GOV_OK);
  j = json::parse(s);
  gov_string_free(s);
  CHECK(j["disc"] == 376);
  CHECK(j["class_group"]["h"] == 1);
  CHECK(j["units"]["fundamental_unit"].is_string());
  gov_field_free(f);

  CHECK(gov_field_new("d=0", &f) != GOV_OK);
}

TEST_CASE("power residue symbol over Q against discrete logs") {
  gov_field* q = nullptr;
  REQUIRE(gov_field_new("Q", &q) == GOV_OK);
  for (std::uint64_t l : {7u, 13u, 19u, 31u, 37u}) {
    // smallest primitive root by brute force
    std::uint64_t g = 2;
    for (;; ++g) {
      std::uint64_t x = 1, ord = 0;
      do {
        x = x * g % l;
        ++ord;
      } while (x != 1);
      if (ord == l - 1) break;
    }
    for (std::uint64_t a = 1; a < l; ++a) {
      std::uint64_t k = 0, x = 1;
      while (x != a) {
        x = x * g % l;
        ++k;
      }
      std::uint64_t e = 99;
      REQUIRE(gov_power_residue_symbol(q, std::to_string(l).c_str(), std::to_string(a).c_str(), "0", "1", 3, 0, &e) ==
              GOV_OK);
      // a = g^k, so a^((l-1)/3) = zeta^k with zeta = g^((l-1)/3)
      CHECK(e == k % 3);
    }
  }
  std::uint64_t e = 0;
  CHECK(gov_power_residue_symbol(q, "7", "0", "0", "1", 3, 0, &e) == GOV_ZERO_ELEMENT);
  CHECK(gov_power_residue_symbol(q, "5", "2", "0", "1", 3, 0, &e) != GOV_OK);
  CHECK(gov_power_residue_symbol(q, "7", "x", "0", "1", 3, 0, &e) == GOV_INVALID_ARGUMENT);
  gov_field_free(q);
}

TEST_CASE("corpus and sweep entry points") {
  Ctx c;
  char* s = nullptr;
  REQUIRE(gov_verify_corpus(c.ctx, R"({"dmin": 5, "dmax": 4})", &s) == GOV_OK);
  json j = json::parse(s);
  gov_string_free(s);
  CHECK(j["cases"] == 0);
  CHECK(j["ok"] == true);
  CHECK(j["seed"] == 20240601);

  REQUIRE(gov_verify_corpus(c.ctx, R"({"dmin": -3, "dmax": 1, "primes": [2, 3], "samples": 5})", &s) == GOV_OK);
  j = json::parse(s);
  gov_string_free(s);
  CHECK(j["cases"] == 40);
  CHECK(j["failures"].empty());

  CHECK(gov_verify_corpus(c.ctx, R"({"primes": [4]})", &s) == GOV_NOT_PRIME);
  CHECK(gov_verify_corpus(c.ctx, R"({"bogus": 1})", &s) == GOV_INVALID_ARGUMENT);

  REQUIRE(gov_intro_sweep(c.ctx, 200, &s) == GOV_OK);
  j = json::parse(s);
  gov_string_free(s);
  CHECK(j["failures"].empty());
  CHECK(j["cases"].get<int>() > 100);
}
