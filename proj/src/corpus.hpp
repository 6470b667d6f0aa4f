#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "oracle.hpp"

namespace governing {

inline constexpr u64 kDefaultCorpusSeed = 20240601;

struct CorpusSpec {
  i64 dmin = -200;
  i64 dmax = 200;           // d = 1 stands for Q
  std::vector<u64> primes{2, 3, 5};
  std::size_t samples = 200;  // sampled sets per (field, p)
  std::size_t max_places = 4;
  u64 norm_bound = 2000;
  u64 seed = kDefaultCorpusSeed;
  bool check_invariance = true;  // recompute with another generator and swapped labels
  std::size_t lemma_max_s = 6;
};

/// Tame places v with delta(K_v) = 1 and N(v) <= bound, plus the real
/// places when p = 2.
std::vector<Place> sample_pool(const Field& F, u64 p, u64 norm_bound, PlaceLabeling labeling = {});

/// The sampled sets for one (field, p), as index lists into the pool.
std::vector<std::vector<std::size_t>> sample_sets(std::size_t pool_size, const CorpusSpec& spec, i64 d, u64 p);

struct CaseOutcome {
  std::string field;
  u64 p = 2;
  std::vector<std::string> S;
  std::string relation_count, engine_count, oracle_count;
  long s = 0;
  bool theorem = false;      // three counts agree, per-subset dims agree
  bool proposition = false;  // dim R_X = h1(X) - h1(empty) on both paths
  bool lemma = true;         // relation basis spans the kernel (checked when s <= lemma_max_s)
  bool lemma_checked = false;
  bool ledger = false;
  bool uniqueness = true;  // p = 2: counts <= 1
  bool invariance = true;
  std::string error;  // nonempty when the case raised
  bool ok() const { return error.empty() && theorem && proposition && lemma && ledger && uniqueness && invariance; }
  nlohmann::json to_json() const;
};

struct FieldOutcome {
  std::string field;
  u64 p = 2;
  std::size_t d = 0;
  std::size_t cl_p_rank = 0;
  long h1_empty_engine = 0;
  long h1_empty_oracle = 0;
  bool dimension_formula = false;
  std::string error;
  bool ok() const { return error.empty() && dimension_formula; }
};

struct CorpusSummary {
  std::size_t cases = 0;
  std::size_t fields = 0;
  std::size_t lemma_checked = 0;
  std::map<std::string, std::size_t> criterion_failures;
  std::vector<CaseOutcome> failures;
  std::vector<FieldOutcome> field_failures;
  double seconds = 0;
  bool ok() const { return failures.empty() && field_failures.empty(); }
  nlohmann::json to_json() const;
};

/// Runs every case of the corpus; `progress` (optional) sees each outcome.
CorpusSummary run_corpus(const CorpusSpec& spec,
                         const std::function<void(const CaseOutcome&)>& progress = {});

/// Runs one case: verification, ledger, lemma check and invariance.
CaseOutcome run_case(const FieldData& K, const VirtualUnitBasis& B, const std::vector<std::string>& tokens,
                     const CorpusSpec& spec);

/// Intro sweep over Q with p = 2: every squarefree odd D with |D| <= dmax,
/// S = primes dividing D plus the real place when D < 0. Checks that a
/// relation exists iff D = 1 mod 4 and that both counts are 1 then.
struct SweepSummary {
  std::size_t cases = 0;
  std::vector<std::string> failures;
  double seconds = 0;
  nlohmann::json to_json() const;
};

SweepSummary run_intro_sweep(i64 dmax);

}  // namespace governing
