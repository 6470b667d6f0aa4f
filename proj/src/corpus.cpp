#include "corpus.hpp"

#include <chrono>
#include <random>

namespace governing {

namespace {

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Field field_for(i64 d) { return d == 1 ? Field::rational() : Field::quadratic(d); }

bool same_numbers(const VerificationReport& a, const VerificationReport& b) {
  if (a.relation_count != b.relation_count || a.engine_count != b.engine_count ||
      a.oracle_count != b.oracle_count || a.subsets.size() != b.subsets.size())
    return false;
  for (std::size_t i = 0; i < a.subsets.size(); ++i) {
    const auto &x = a.subsets[i], &y = b.subsets[i];
    if (x.dim_R != y.dim_R || x.engine != y.engine || x.oracle != y.oracle) return false;
  }
  return true;
}

}  // namespace

std::vector<Place> sample_pool(const Field& F, u64 p, u64 norm_bound, PlaceLabeling labeling) {
  std::vector<Place> pool;
  for (u64 l = 2; l <= norm_bound; l = next_prime(l)) {
    if (l == p) continue;
    for (Place& v : factor_rational_prime(F, l, labeling))
      if (v.q <= norm_bound && (v.q - 1) % p == 0) pool.push_back(std::move(v));
  }
  if (p == 2)
    for (Place& v : real_places(F, labeling)) pool.push_back(std::move(v));
  return pool;
}

std::vector<std::vector<std::size_t>> sample_sets(std::size_t pool_size, const CorpusSpec& spec, i64 d, u64 p) {
  std::vector<std::vector<std::size_t>> out;
  if (pool_size == 0 || spec.max_places == 0) return out;
  const u64 stream = spec.seed ^ (static_cast<u64>(d + (i64{1} << 20)) * 0x9E3779B97F4A7C15ULL) ^ (p << 56);
  std::mt19937_64 rng(stream);
  const std::size_t kmax = std::min(spec.max_places, pool_size);
  for (std::size_t i = 0; i < spec.samples; ++i) {
    const std::size_t k = 1 + rng() % kmax;
    std::vector<std::size_t> idx(pool_size);
    for (std::size_t j = 0; j < pool_size; ++j) idx[j] = j;
    for (std::size_t j = 0; j < k; ++j) std::swap(idx[j], idx[j + rng() % (pool_size - j)]);
    idx.resize(k);
    out.push_back(std::move(idx));
  }
  return out;
}

CaseOutcome run_case(const FieldData& K, const VirtualUnitBasis& B, const std::vector<std::string>& tokens,
                     const CorpusSpec& spec) {
  CaseOutcome out;
  out.field = K.field.spec();
  out.p = B.p;
  out.S = tokens;
  try {
    std::vector<Place> S;
    for (const auto& t : tokens) S.push_back(parse_place(K.field, t));
    VerificationReport rep = verify_theorem_main(K, B, S);
    out.relation_count = rep.relation_count.get_str();
    out.engine_count = rep.engine_count.get_str();
    out.oracle_count = rep.oracle_count.get_str();
    out.theorem = rep.pass;
    out.proposition = rep.proposition_holds;
    if (B.p == 2) out.uniqueness = rep.relation_count <= 1 && rep.engine_count <= 1 && rep.oracle_count <= 1;

    GoverningMatrix G = governing_matrix(S, B);
    RelationSpace R = relation_space(G);
    out.s = static_cast<long>(R.s);
    if (R.s <= spec.lemma_max_s) {
      out.lemma_checked = true;
      out.lemma = relation_basis_spans_kernel(G, R);
    }
    try {
      wiles_greenberg_ledger(S, B, G);
      out.ledger = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::LedgerMismatch) throw;
      out.ledger = false;
    }

    if (spec.check_invariance) {
      VerificationReport other_gen = verify_theorem_main(K, B, S, SymbolNormalization{1});
      std::vector<Place> swapped;
      for (const auto& t : tokens) swapped.push_back(parse_place(K.field, t, PlaceLabeling{true}));
      VerificationReport other_lab = verify_theorem_main(K, B, swapped);
      out.invariance = same_numbers(rep, other_gen) && same_numbers(rep, other_lab);
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

CorpusSummary run_corpus(const CorpusSpec& spec, const std::function<void(const CaseOutcome&)>& progress) {
  const auto t0 = std::chrono::steady_clock::now();
  CorpusSummary sum;
  for (i64 d = spec.dmin; d <= spec.dmax; ++d) {
    if (d == 0 || !is_squarefree(d)) continue;
    const Field F = field_for(d);
    FieldData K;
    try {
      K = FieldData::compute(F);
    } catch (const std::exception& e) {
      for (u64 p : spec.primes) {
        FieldOutcome fo;
        fo.field = F.spec();
        fo.p = p;
        fo.error = e.what();
        sum.field_failures.push_back(fo);
      }
      continue;
    }
    for (u64 p : spec.primes) {
      ++sum.fields;
      FieldOutcome fo;
      fo.field = F.spec();
      fo.p = p;
      std::vector<Place> pool;
      VirtualUnitBasis B;
      try {
        pool = sample_pool(F, p, spec.norm_bound);
        B = virtual_unit_basis(F, p, K.classes, K.units, pool);
        fo.d = B.d();
        fo.cl_p_rank = class_p_rank(K.classes, p);
        exact_sequence_report(B, K.classes);
        fo.h1_empty_engine = koch_formula(F, p, B.d(), 0);
        fo.h1_empty_oracle = oracle_h1_dim(K, p, {});
        const long cl = static_cast<long>(fo.cl_p_rank);
        fo.dimension_formula = fo.h1_empty_engine == cl && fo.h1_empty_oracle == cl;
      } catch (const std::exception& e) {
        fo.error = e.what();
      }
      if (!fo.ok()) {
        ++sum.criterion_failures["dimension"];
        sum.field_failures.push_back(fo);
        if (!fo.error.empty()) continue;
      }
      for (const auto& idx : sample_sets(pool.size(), spec, d, p)) {
        std::vector<std::string> tokens;
        for (std::size_t i : idx) tokens.push_back(pool[i].token());
        CaseOutcome c = run_case(K, B, tokens, spec);
        ++sum.cases;
        sum.lemma_checked += c.lemma_checked;
        if (!c.error.empty()) ++sum.criterion_failures["error"];
        if (!c.theorem) ++sum.criterion_failures["theorem"];
        if (!c.proposition) ++sum.criterion_failures["proposition"];
        if (!c.lemma) ++sum.criterion_failures["lemma"];
        if (!c.ledger) ++sum.criterion_failures["ledger"];
        if (!c.uniqueness) ++sum.criterion_failures["uniqueness"];
        if (!c.invariance) ++sum.criterion_failures["invariance"];
        if (progress) progress(c);
        if (!c.ok()) sum.failures.push_back(std::move(c));
      }
    }
  }
  sum.seconds = elapsed(t0);
  return sum;
}

nlohmann::json CaseOutcome::to_json() const {
  nlohmann::json j{{"field", field},
                   {"p", p},
                   {"S", S},
                   {"relation_count", relation_count},
                   {"engine_count", engine_count},
                   {"oracle_count", oracle_count},
                   {"s", s},
                   {"theorem", theorem},
                   {"proposition", proposition},
                   {"lemma", lemma},
                   {"ledger", ledger},
                   {"uniqueness", uniqueness},
                   {"invariance", invariance}};
  if (!error.empty()) j["error"] = error;
  return j;
}

nlohmann::json CorpusSummary::to_json() const {
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : failures) fails.push_back(f.to_json());
  nlohmann::json ffails = nlohmann::json::array();
  for (const auto& f : field_failures) {
    nlohmann::json j{{"field", f.field}, {"p", f.p}, {"d", f.d}, {"cl_p_rank", f.cl_p_rank},
                     {"h1_empty_engine", f.h1_empty_engine}, {"h1_empty_oracle", f.h1_empty_oracle}};
    if (!f.error.empty()) j["error"] = f.error;
    ffails.push_back(j);
  }
  nlohmann::json crit = nlohmann::json::object();
  for (const auto& [k, v] : criterion_failures) crit[k] = v;
  return nlohmann::json{{"v", 1},
                        {"cases", cases},
                        {"fields", fields},
                        {"lemma_checked", lemma_checked},
                        {"criterion_failures", crit},
                        {"failures", fails},
                        {"field_failures", ffails},
                        {"seconds", seconds},
                        {"ok", ok()}};
}

SweepSummary run_intro_sweep(i64 dmax) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepSummary sum;
  FieldData Q = FieldData::compute(Field::rational());
  VirtualUnitBasis B = virtual_unit_basis(Q.field, 2, Q.classes, Q.units, {});
  for (i64 D = -dmax; D <= dmax; ++D) {
    if (D == 0 || D % 2 == 0 || !is_squarefree(D)) continue;
    ++sum.cases;
    std::vector<Place> S;
    for (u64 l : prime_divisors(static_cast<u64>(D < 0 ? -D : D)))
      S.push_back(parse_place(Q.field, std::to_string(l)));
    if (D < 0) S.push_back(parse_place(Q.field, "inf"));
    const bool one_mod_four = ((D % 4) + 4) % 4 == 1;
    std::string why;
    try {
      VerificationReport rep = verify_theorem_main(Q, B, S);
      if ((rep.relation_count > 0) != one_mod_four) why = "relation existence";
      else if (one_mod_four && (rep.engine_count != 1 || rep.oracle_count != 1)) why = "counts differ from 1";
      else if (!rep.pass) why = "verification failed";
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (!why.empty()) sum.failures.push_back("D=" + std::to_string(D) + ": " + why);
  }
  sum.seconds = elapsed(t0);
  return sum;
}

nlohmann::json SweepSummary::to_json() const {
  return nlohmann::json{{"v", 1}, {"cases", cases}, {"failures", failures}, {"seconds", seconds}, {"ok", failures.empty()}};
}

}  // namespace governing
