// Acceptance checks. Without arguments runs everything and prints one line
// per criterion. With --corpus FILE runs the sampled corpus and stores the
// tallies; with --criterion N [--results FILE] reports a single criterion.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "corpus.hpp"
#include "json.hpp"

using namespace governing;
using nlohmann::json;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Verdict intro_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  SweepSummary s = run_intro_sweep(10000);
  const double secs = seconds_since(t0);
  Verdict v;
  v.pass = s.failures.empty() && s.cases > 0 && secs < 30;
  v.detail = std::to_string(s.cases) + " discriminants, " + std::to_string(s.failures.size()) + " failures, " +
             std::to_string(secs) + " s";
  for (std::size_t i = 0; i < s.failures.size() && i < 5; ++i) v.detail += "\n    " + s.failures[i];
  return v;
}

// Full-support tuples by direct enumeration over (F_p^*)^n.
mpz_class enumerate_tuples(const GoverningMatrix& G) {
  const std::size_t n = G.columns.size();
  std::vector<u64> a(n, 1);
  mpz_class count = 0;
  for (;;) {
    bool zero = true;
    for (std::size_t i = 0; i < G.d && zero; ++i) {
      u64 acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc = (acc + a[j] * G.columns[j][i]) % G.p;
      zero = acc == 0;
    }
    if (zero) ++count;
    std::size_t j = 0;
    while (j < n && a[j] == G.p - 1) a[j++] = 1;
    if (j == n) break;
    ++a[j];
  }
  return count;
}

Verdict brute_force_relations() {
  std::mt19937_64 rng(kDefaultCorpusSeed);
  const u64 primes[] = {2, 3, 5};
  std::size_t bad = 0, nonzero = 0;
  std::string first;
  for (int t = 0; t < 1000; ++t) {
    GoverningMatrix G;
    G.p = primes[rng() % 3];
    G.d = rng() % 5;
    const std::size_t n = rng() % 6;
    for (std::size_t j = 0; j < n; ++j) {
      FpVec c(G.d);
      for (auto& x : c) x = rng() % G.p;
      G.columns.push_back(c);
      Place v;
      v.ell = 1000 + j;
      G.places.push_back(v);
    }
    const mpz_class fast = count_full_support_relations(G);
    const mpz_class slow = enumerate_tuples(G);
    if (slow != 0) ++nonzero;
    if (fast != slow) {
      if (first.empty()) first = G.to_json().dump() + " engine " + fast.get_str() + " brute " + slow.get_str();
      ++bad;
    }
  }
  Verdict v;
  v.pass = bad == 0;
  v.detail = "1000 matrices, " + std::to_string(nonzero) + " with relations, " + std::to_string(bad) + " mismatches";
  if (!first.empty()) v.detail += "\n    " + first;
  return v;
}

// Dimension formula, per field and prime, recomputed outside the corpus runner.
json dimension_check(const CorpusSpec& spec) {
  std::size_t pairs = 0, bad = 0;
  std::string first;
  for (i64 d = spec.dmin; d <= spec.dmax; ++d) {
    if (d == 0 || !is_squarefree(d)) continue;
    const Field F = d == 1 ? Field::rational() : Field::quadratic(d);
    const FieldData K = FieldData::compute(F);
    for (u64 p : spec.primes) {
      ++pairs;
      std::string why;
      try {
        const auto pool = sample_pool(F, p, spec.norm_bound);
        const VirtualUnitBasis B = virtual_unit_basis(F, p, K.classes, K.units, pool);
        const long cl = static_cast<long>(class_p_rank(K.classes, p));
        const long expect = F.r1() + F.r2() - 1 + delta_field(F, p) + cl;
        if (static_cast<long>(B.d()) != expect) why = "d = " + std::to_string(B.d()) + ", formula " + std::to_string(expect);
        const long h_engine = koch_formula(F, p, B.d(), 0);
        const long h_oracle = oracle_h1_dim(K, p, {});
        if (h_engine != cl || h_oracle != cl)
          why += " h1(empty) engine " + std::to_string(h_engine) + " oracle " + std::to_string(h_oracle) +
                 " Cl[p] " + std::to_string(cl);
      } catch (const std::exception& e) {
        why = e.what();
      }
      if (!why.empty()) {
        ++bad;
        if (first.empty()) first = F.spec() + " p=" + std::to_string(p) + ": " + why;
      }
    }
  }
  return json{{"pairs", pairs}, {"bad", bad}, {"first", first}};
}

json run_full_corpus() {
  CorpusSpec spec;  // |d| <= 200 plus Q, p in {2,3,5}, 200 sets, |S| <= 4, norms <= 2000
  std::size_t cases = 0, p2_cases = 0, p2_max_ok = 0, small_s = 0, lemma_ok = 0, errors = 0;
  std::size_t theorem_ok = 0, prop_ok = 0, ledger_ok = 0, inv_ok = 0;
  std::string first_error;
  CorpusSummary sum = run_corpus(spec, [&](const CaseOutcome& c) {
    ++cases;
    if (!c.error.empty()) {
      ++errors;
      if (first_error.empty()) first_error = c.to_json().dump();
    }
    theorem_ok += c.theorem && c.relation_count == c.engine_count && c.engine_count == c.oracle_count;
    prop_ok += c.proposition;
    ledger_ok += c.ledger;
    inv_ok += c.invariance;
    if (c.p == 2) {
      ++p2_cases;
      p2_max_ok += c.uniqueness && c.error.empty();
    }
    if (c.error.empty() && c.s <= 6) {
      ++small_s;
      lemma_ok += c.lemma_checked && c.lemma;
    }
  });
  json failures = json::array();
  for (std::size_t i = 0; i < sum.failures.size() && i < 5; ++i) failures.push_back(sum.failures[i].to_json());
  return json{{"seed", spec.seed},
              {"fields", sum.fields},
              {"cases", cases},
              {"errors", errors},
              {"first_error", first_error},
              {"theorem_ok", theorem_ok},
              {"proposition_ok", prop_ok},
              {"ledger_ok", ledger_ok},
              {"invariance_ok", inv_ok},
              {"p2_cases", p2_cases},
              {"p2_ok", p2_max_ok},
              {"small_s", small_s},
              {"lemma_ok", lemma_ok},
              {"field_failures", sum.field_failures.size()},
              {"dimension", dimension_check(spec)},
              {"failures", failures},
              {"seconds", sum.seconds}};
}

Verdict from_corpus(int n, const json& r) {
  const std::size_t cases = r["cases"], errors = r["errors"];
  auto tally = [&](const char* key, std::size_t want) {
    Verdict v;
    const std::size_t ok = r[key];
    v.pass = want > 0 && ok == want && errors == 0;
    v.detail = std::to_string(ok) + "/" + std::to_string(want) + " cases";
    if (errors) v.detail += ", " + std::to_string(errors) + " errors, first " + r["first_error"].get<std::string>();
    return v;
  };
  switch (n) {
    case 2: {
      Verdict v = tally("theorem_ok", cases);
      v.detail += " over " + std::to_string(r["fields"].get<std::size_t>()) + " field/prime pairs (seed " +
                  std::to_string(r["seed"].get<u64>()) + ")";
      return v;
    }
    case 3: return tally("proposition_ok", cases);
    case 5: return tally("lemma_ok", r["small_s"]);
    case 6: return tally("ledger_ok", cases);
    case 7: {
      const json& d = r["dimension"];
      Verdict v;
      v.pass = d["bad"] == 0 && r["field_failures"] == 0 && d["pairs"] > 0;
      v.detail = std::to_string(d["pairs"].get<std::size_t>()) + " field/prime pairs, " +
                 std::to_string(d["bad"].get<std::size_t>()) + " mismatches";
      if (d["bad"] != 0) v.detail += "\n    " + d["first"].get<std::string>();
      return v;
    }
    case 8: return tally("p2_ok", r["p2_cases"]);
    case 9: return tally("invariance_ok", cases);
  }
  return {};
}

const char* kNames[] = {"",
                        "intro sweep |D| <= 10^4",
                        "relation count = engine count = oracle count",
                        "dim R_X = h1(X) - h1(empty) for all X",
                        "full-support count vs brute force",
                        "relation basis spans the kernel",
                        "ledger value equals s",
                        "dimension formula and h1(empty) = dim Cl[p]",
                        "p = 2 counts at most one",
                        "generator and branch-label invariance"};

int print(int n, const Verdict& v) {
  std::printf("[%s] criterion %d: %s: %s\n", v.pass ? "PASS" : "FAIL", n, kNames[n], v.detail.c_str());
  std::fflush(stdout);
  return v.pass ? 0 : 1;
}

json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("no corpus results at " + path);
  return json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
  std::string corpus_out, results;
  int criterion = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--corpus") && i + 1 < argc) corpus_out = argv[++i];
    else if (!std::strcmp(argv[i], "--results") && i + 1 < argc) results = argv[++i];
    else if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) criterion = std::atoi(argv[++i]);
    else {
      std::fprintf(stderr, "usage: %s [--corpus FILE | --criterion N [--results FILE]]\n", argv[0]);
      return 2;
    }
  }
  try {
    if (!corpus_out.empty()) {
      json r = run_full_corpus();
      std::ofstream(corpus_out) << r.dump(2) << "\n";
      std::printf("corpus: %zu cases in %.1f s, seed %llu\n", r["cases"].get<std::size_t>(), r["seconds"].get<double>(),
                  static_cast<unsigned long long>(r["seed"].get<u64>()));
      return 0;
    }
    if (criterion == 1) return print(1, intro_sweep());
    if (criterion == 4) return print(4, brute_force_relations());
    if (criterion >= 2 && criterion <= 9) return print(criterion, from_corpus(criterion, load(results)));
    if (criterion != 0) return 2;

    int failed = print(1, intro_sweep());
    const json r = run_full_corpus();
    for (int n = 2; n <= 9; ++n) failed += print(n, n == 4 ? brute_force_relations() : from_corpus(n, r));
    return failed ? 1 : 0;
  } catch (const std::exception& e) {
    std::printf("[FAIL] criterion %d: %s\n", criterion, e.what());
    return 1;
  }
}
