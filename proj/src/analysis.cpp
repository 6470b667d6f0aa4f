#include "analysis.hpp"

#include "cache.hpp"
#include "oracle.hpp"

namespace governing {

using nlohmann::json;

nlohmann::json integer_json(const mpz_class& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

AnalysisRequest request_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::InvalidArgument, "request must be a JSON object");
  static const char* known[] = {"field", "p", "places", "emit_matrix", "verify", "subsets",
                                "cache", "swap_branches", "generator_rank", "cap"};
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* n : known) ok = ok || k == n;
    if (!ok) fail(ErrorCode::InvalidArgument, "unknown request key '" + k + "'");
  }
  AnalysisRequest r;
  try {
    r.field = j.at("field").get<std::string>();
    r.p = j.at("p").get<u64>();
    r.places = j.value("places", std::string());
    r.emit_matrix = j.value("emit_matrix", false);
    r.verify = j.value("verify", false);
    r.subsets = j.value("subsets", false);
    r.cache_dir = j.value("cache", std::string());
    r.swap_branches = j.value("swap_branches", false);
    r.generator_rank = j.value("generator_rank", 0u);
    r.cap = j.value("cap", kDefaultSubsetCap);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("bad request: ") + e.what());
  }
  return r;
}

namespace {

json field_json(const Field& F, u64 p) {
  return json{{"kind", F.is_rational() ? "rational" : "quadratic"},
              {"d", F.is_rational() ? json(nullptr) : json(F.d())},
              {"disc", F.disc()},
              {"r1", F.r1()},
              {"r2", F.r2()},
              {"delta", delta_field(F, p)}};
}

std::vector<std::string> split_tokens(const std::string& list) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t next = list.find(',', pos);
    if (next == std::string::npos) next = list.size();
    std::string tok = list.substr(pos, next - pos);
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ' ') tok.pop_back();
    if (!tok.empty()) out.push_back(tok);
    pos = next + 1;
  }
  return out;
}

std::vector<Place> validate_places(const Field& F, u64 p, const std::string& list, PlaceLabeling labeling) {
  const auto tokens = split_tokens(list);
  // archimedean tokens are rejected before anything else when p is odd
  for (const auto& t : tokens)
    if (t.rfind("inf", 0) == 0 && p != 2) fail(ErrorCode::ArchimedeanRequiresP2, "'" + t + "' requires p = 2");
  std::vector<Place> S;
  for (const auto& t : tokens) S.push_back(parse_place(F, t, labeling));
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (S[i] == S[j]) fail(ErrorCode::DuplicatePlace, "place " + tokens[i] + " occurs twice");
    if (S[i].is_finite() && S[i].ell == p) fail(ErrorCode::WildPlace, tokens[i] + " lies above p");
    if (delta_place(S[i], p) != 1)
      fail(ErrorCode::DeltaZero, "N(" + tokens[i] + ") = " + std::to_string(S[i].q) + " is not 1 mod " + std::to_string(p));
  }
  return S;
}

CachedField load_or_compute(const AnalysisRequest& req, const Field& F, const std::vector<Place>& S) {
  if (!req.cache_dir.empty())
    if (auto hit = cache_load(req.cache_dir, F, req.p, S)) return *hit;
  CachedField c;
  c.data = FieldData::compute(F);
  c.basis = virtual_unit_basis(F, req.p, c.data.classes, c.data.units, S);
  if (!req.cache_dir.empty()) cache_store(req.cache_dir, c);
  return c;
}

}  // namespace

json field_report(const Field& F) {
  FieldData K = FieldData::compute(F);
  json gens = json::array();
  for (const Ideal& g : K.classes.generators) gens.push_back(g.to_string());
  json units{{"torsion_order", K.units.torsion_order}, {"torsion_generator", K.units.torsion_generator.to_string()}};
  if (K.units.fundamental_unit) {
    units["fundamental_unit"] = K.units.fundamental_unit->to_string();
    units["fundamental_norm"] = K.units.fundamental_norm;
  }
  return json{{"v", 1},
              {"field", F.spec()},
              {"disc", F.disc()},
              {"r1", F.r1()},
              {"r2", F.r2()},
              {"class_group", {{"h", K.classes.h}, {"invariants", K.classes.invariants}, {"generators", gens}}},
              {"units", units}};
}

json analyze(const AnalysisRequest& req) {
  const Field F = Field::parse(req.field);
  if (!is_prime(req.p)) fail(ErrorCode::NotPrime, std::to_string(req.p) + " is not prime");
  const u64 p = req.p;
  const PlaceLabeling labeling{req.swap_branches};
  const std::vector<Place> S = validate_places(F, p, req.places, labeling);
  const std::size_t cap = std::min<std::size_t>(req.cap, 31);
  if (S.size() > cap)
    fail(ErrorCode::SetTooLarge, "|S| = " + std::to_string(S.size()) + " exceeds the subset cap " + std::to_string(cap));

  const CachedField cf = load_or_compute(req, F, S);
  const FieldData& K = cf.data;
  const VirtualUnitBasis& B = cf.basis;
  exact_sequence_report(B, K.classes);
  const SymbolNormalization norm{req.generator_rank};

  const GoverningMatrix G = governing_matrix(S, B, norm);
  const RelationSpace R = relation_space(G);
  const mpz_class relations = count_full_support_relations(G, cap);
  const std::vector<long> dims = koch_subset_dims(F, G);
  const mpz_class cohomology = count_exact_ramified_classes(S.size(), p, dims, cap);
  const LedgerReport L = wiles_greenberg_ledger(S, B, G);

  json entries = json::array();
  for (const auto& e : B.entries) {
    json x{{"value", e.value.to_string()}, {"source", std::string(source_name(e.source))}};
    if (e.source == VirtualUnitSource::ClassLift) {
      x["witness"] = e.witness.to_string();
      x["witness_place"] = e.witness_place;
    }
    entries.push_back(x);
  }
  json out{{"v", 1},
           {"field", field_json(F, p)},
           {"p", p},
           {"places", G.tokens()},
           {"basis", {{"d", B.d()}, {"entries", entries}}},
           {"relations", R.to_json()},
           {"counts", {{"relations", integer_json(relations)}, {"cohomology", integer_json(cohomology)}}},
           {"ledger", {{"mN", L.mN}, {"mM", L.mM}, {"value", L.value}}},
           {"exists", relations > 0}};
  if (req.emit_matrix) out["matrix"] = G.to_json();
  if (req.subsets) {
    json koch = json::array();
    for (std::size_t m = 0; m < dims.size(); ++m) {
      std::vector<std::string> T;
      for (std::size_t j = 0; j < S.size(); ++j)
        if (m >> j & 1u) T.push_back(S[j].token());
      koch.push_back({{"T", T}, {"dim", dims[m]}});
    }
    out["koch"] = koch;
  }
  if (relations != cohomology)
    fail(ErrorCode::DimensionMismatch, "relation count " + relations.get_str() + " differs from cohomology count " +
                                           cohomology.get_str());
  if (req.verify) {
    VerificationReport rep = verify_theorem_main(K, B, S, norm, cap);
    out["counts"]["oracle"] = integer_json(rep.oracle_count);
    out["counts"]["verdict"] = rep.pass ? "pass" : "fail";
    if (!rep.pass) fail(ErrorCode::DimensionMismatch, "oracle verification failed: " + rep.to_json().dump());
  }
  return out;
}

}  // namespace governing
