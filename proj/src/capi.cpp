#include "governing/governing.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "analysis.hpp"
#include "corpus.hpp"
#include "frobenius.hpp"

using nlohmann::json;
using namespace governing;

struct gov_context {
  std::string cache_dir;
};

struct gov_field {
  Field field;
};

namespace {

thread_local std::string last_error;
thread_local bool has_error = false;

gov_status to_status(ErrorCode c) { return static_cast<gov_status>(static_cast<int>(c) + 1); }

gov_status record(gov_status status, const std::string& message) {
  has_error = true;
  last_error = json{{"status", status}, {"code", gov_status_name(status)}, {"message", message}}.dump();
  return status;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs body with error translation. body returns a status.
template <class Body>
gov_status guarded(Body&& body) {
  has_error = false;
  try {
    gov_status st = body();
    return st;
  } catch (const Error& e) {
    return record(to_status(e.code()), e.what());
  } catch (const json::exception& e) {
    return record(GOV_INVALID_ARGUMENT, std::string("json: ") + e.what());
  } catch (const std::bad_alloc&) {
    return record(GOV_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(GOV_INTERNAL, e.what());
  }
}

mpz_class parse_mpz(const char* s, const char* what) {
  if (!s) fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
  mpz_class x;
  if (x.set_str(s, 10) != 0) fail(ErrorCode::InvalidArgument, std::string("cannot parse ") + what + " '" + s + "'");
  return x;
}

CorpusSpec corpus_spec_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::InvalidArgument, "corpus spec must be a JSON object");
  static const char* known[] = {"dmin", "dmax", "primes", "samples", "max_places", "norm_bound", "seed", "invariance"};
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* n : known) ok = ok || k == n;
    if (!ok) fail(ErrorCode::InvalidArgument, "unknown corpus key '" + k + "'");
  }
  CorpusSpec s;
  s.dmin = j.value("dmin", s.dmin);
  s.dmax = j.value("dmax", s.dmax);
  s.primes = j.value("primes", s.primes);
  s.samples = j.value("samples", s.samples);
  s.max_places = j.value("max_places", s.max_places);
  s.norm_bound = j.value("norm_bound", s.norm_bound);
  s.seed = j.value("seed", s.seed);
  s.check_invariance = j.value("invariance", s.check_invariance);
  for (u64 p : s.primes)
    if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (s.max_places > kDefaultSubsetCap) fail(ErrorCode::SetTooLarge, "max_places exceeds the subset cap");
  if (s.dmax - s.dmin > 200000) fail(ErrorCode::InvalidArgument, "discriminant range too wide");
  return s;
}

}  // namespace

extern "C" {

const char* gov_version(void) { return "1.0.0"; }

const char* gov_status_name(gov_status status) {
  if (status == GOV_OK) return "Ok";
  if (status == GOV_VERIFICATION_FAILED) return "VerificationFailed";
  if (status > GOV_OK && status <= GOV_INTERNAL) {
    static std::string names[GOV_INTERNAL + 1];
    std::string& n = names[status];
    if (n.empty()) n = std::string(error_name(static_cast<ErrorCode>(status - 1)));
    return n.c_str();
  }
  return "Unknown";
}

int gov_status_is_invariant_failure(gov_status status) {
  if (status == GOV_VERIFICATION_FAILED) return 1;
  if (status > GOV_OK && status <= GOV_INTERNAL) return is_invariant_failure(static_cast<ErrorCode>(status - 1));
  return 0;
}

void gov_string_free(char* s) { std::free(s); }

const char* gov_last_error(void) { return has_error ? last_error.c_str() : nullptr; }

gov_status gov_context_new(const char* cache_dir, gov_context** out) {
  return guarded([&] {
    if (!out) fail(ErrorCode::InvalidArgument, "out is null");
    *out = new gov_context{cache_dir ? cache_dir : ""};
    return GOV_OK;
  });
}

void gov_context_free(gov_context* ctx) { delete ctx; }

gov_status gov_analyze(gov_context* ctx, const char* request_json, char** report_json) {
  return guarded([&] {
    if (!ctx || !request_json || !report_json) fail(ErrorCode::InvalidArgument, "null argument");
    json j = json::parse(request_json);
    AnalysisRequest req = request_from_json(j);
    if (!j.contains("cache")) req.cache_dir = ctx->cache_dir;
    *report_json = dup(analyze(req).dump());
    return GOV_OK;
  });
}

gov_status gov_verify_corpus(gov_context* ctx, const char* spec_json, char** summary_json) {
  return guarded([&] {
    if (!ctx || !summary_json) fail(ErrorCode::InvalidArgument, "null argument");
    const CorpusSpec spec = corpus_spec_from_json(spec_json ? json::parse(spec_json) : json::object());
    CorpusSummary sum = run_corpus(spec);
    json out = sum.to_json();
    out["seed"] = spec.seed;
    *summary_json = dup(out.dump());
    return sum.ok() ? GOV_OK : record(GOV_VERIFICATION_FAILED, "corpus has failing cases");
  });
}

gov_status gov_intro_sweep(gov_context* ctx, int64_t dmax, char** summary_json) {
  return guarded([&] {
    if (!ctx || !summary_json) fail(ErrorCode::InvalidArgument, "null argument");
    if (dmax < 0 || dmax > 10000000) fail(ErrorCode::InvalidArgument, "dmax out of range");
    SweepSummary sum = run_intro_sweep(dmax);
    *summary_json = dup(sum.to_json().dump());
    return sum.failures.empty() ? GOV_OK : record(GOV_VERIFICATION_FAILED, "sweep has failing cases");
  });
}

gov_status gov_field_new(const char* spec, gov_field** out) {
  return guarded([&] {
    if (!spec || !out) fail(ErrorCode::InvalidArgument, "null argument");
    *out = new gov_field{Field::parse(spec)};
    return GOV_OK;
  });
}

void gov_field_free(gov_field* field) { delete field; }

gov_status gov_field_info(const gov_field* field, char** info_json) {
  return guarded([&] {
    if (!field || !info_json) fail(ErrorCode::InvalidArgument, "null argument");
    *info_json = dup(field_report(field->field).dump());
    return GOV_OK;
  });
}

gov_status gov_power_residue_symbol(const gov_field* field, const char* place_token, const char* a, const char* b,
                                    const char* den, uint64_t p, unsigned generator_rank, uint64_t* exponent) {
  return guarded([&] {
    if (!field || !place_token || !exponent) fail(ErrorCode::InvalidArgument, "null argument");
    if (!is_prime(p)) fail(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    const Field& F = field->field;
    FieldElement x(F, parse_mpz(a, "a"), b ? parse_mpz(b, "b") : mpz_class(0), den ? parse_mpz(den, "den") : mpz_class(1));
    *exponent = power_residue_symbol(parse_place(F, place_token), x, p, SymbolNormalization{generator_rank});
    return GOV_OK;
  });
}

}  // extern "C"
