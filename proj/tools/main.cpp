// governing-cli: analyze a tame set, verify corpora, print field data.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "governing/governing.h"
#include "json.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailedCases = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInvariant = 3;

int report_error(gov_status st) {
  const char* err = gov_last_error();
  std::cerr << (err ? err : "{}") << "\n";
  if (st == GOV_VERIFICATION_FAILED) return kExitFailedCases;
  return gov_status_is_invariant_failure(st) ? kExitInvariant : kExitValidation;
}

void print_owned(char* s) {
  std::cout << json::parse(s).dump(2) << "\n";
  gov_string_free(s);
}

struct Context {
  gov_context* ctx = nullptr;
  ~Context() { gov_context_free(ctx); }
};

bool parse_range(const std::string& text, std::int64_t& lo, std::int64_t& hi) {
  const auto dots = text.find("..", 1);
  if (dots == std::string::npos) return false;
  try {
    std::size_t used = 0;
    lo = std::stoll(text.substr(0, dots), &used);
    if (used != dots) return false;
    const std::string rest = text.substr(dots + 2);
    hi = std::stoll(rest, &used);
    return used == rest.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Governing-field analysis of tame Z/pZ-extensions of Q and quadratic fields"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gov_version());

  // analyze
  auto* an = app.add_subcommand("analyze", "Relations, counts and ledger for one (K, p, S)");
  std::string field, places, cache;
  std::uint64_t prime = 0;
  bool emit_matrix = false, verify = false, subsets = false, swap = false;
  unsigned rank = 0;
  std::size_t cap = 16;
  an->add_option("--field", field, "Q or d=<squarefree integer>")->required();
  an->add_option("--prime", prime, "the prime p")->required();
  an->add_option("--places", places, "comma separated place tokens, e.g. 3,7,inf or 13.1");
  an->add_flag("--emit-matrix", emit_matrix, "include the governing matrix");
  an->add_flag("--verify", verify, "cross-check counts against the ray class oracle");
  an->add_flag("--subsets", subsets, "include h1 dimensions for every subset of S");
  an->add_option("--cache", cache, "cache directory (default: $GOVERNING_CACHE)");
  an->add_flag("--swap-branches", swap, "exchange the a/b labels of split primes");
  an->add_option("--generator-rank", rank, "use the n-th residue field generator in symbols");
  an->add_option("--cap", cap, "largest |S| accepted");

  // verify
  auto* ve = app.add_subcommand("verify", "Run the intro sweep (--field Q --prime 2 --dmax) or a corpus (--drange)");
  std::string vfield, drange;
  std::uint64_t vprime = 0;
  std::int64_t dmax = -1;
  std::vector<std::uint64_t> primes{2, 3, 5};
  std::size_t max_places = 4, samples = 200;
  std::uint64_t norm_bound = 2000, seed = 20240601;
  bool no_invariance = false;
  ve->add_option("--field", vfield, "Q for the intro sweep");
  ve->add_option("--prime", vprime, "2 for the intro sweep");
  ve->add_option("--dmax", dmax, "sweep bound on |D|");
  ve->add_option("--drange", drange, "corpus range a..b of squarefree d (1 means Q)");
  ve->add_option("--primes", primes, "corpus primes")->delimiter(',');
  ve->add_option("--max-places", max_places, "largest sampled |S|");
  ve->add_option("--samples", samples, "sampled sets per field and prime");
  ve->add_option("--norm-bound", norm_bound, "largest place norm in the pool");
  ve->add_option("--seed", seed, "sampling seed");
  ve->add_flag("--no-invariance", no_invariance, "skip the generator and label invariance recomputation");

  // field
  auto* fi = app.add_subcommand("field", "Discriminant, class group and units");
  std::string ffield;
  fi->add_option("--field", ffield, "Q or d=<squarefree integer>")->required();

  CLI11_PARSE(app, argc, argv);

  Context c;
  if (cache.empty())
    if (const char* env = std::getenv("GOVERNING_CACHE")) cache = env;
  if (gov_status st = gov_context_new(cache.empty() ? nullptr : cache.c_str(), &c.ctx); st != GOV_OK)
    return report_error(st);

  if (*an) {
    json req{{"field", field},
             {"p", prime},
             {"places", places},
             {"emit_matrix", emit_matrix},
             {"verify", verify},
             {"subsets", subsets},
             {"swap_branches", swap},
             {"generator_rank", rank},
             {"cap", cap}};
    char* out = nullptr;
    gov_status st = gov_analyze(c.ctx, req.dump().c_str(), &out);
    if (st != GOV_OK) return report_error(st);
    print_owned(out);
    return kExitOk;
  }

  if (*ve) {
    char* out = nullptr;
    gov_status st;
    if (dmax >= 0) {
      if (!drange.empty() || (vfield != "Q" && vfield != "q") || vprime != 2) {
        std::cerr << json{{"code", "InvalidArgument"}, {"message", "--dmax needs --field Q --prime 2 and no --drange"}}.dump()
                  << "\n";
        return kExitValidation;
      }
      st = gov_intro_sweep(c.ctx, dmax, &out);
    } else {
      std::int64_t lo = 0, hi = 0;
      if (!parse_range(drange, lo, hi)) {
        std::cerr << json{{"code", "InvalidArgument"}, {"message", "--drange must look like a..b"}}.dump() << "\n";
        return kExitValidation;
      }
      json spec{{"dmin", lo},         {"dmax", hi},           {"primes", primes},
                {"samples", samples}, {"max_places", max_places}, {"norm_bound", norm_bound},
                {"seed", seed},       {"invariance", !no_invariance}};
      std::cerr << "corpus seed " << seed << "\n";
      st = gov_verify_corpus(c.ctx, spec.dump().c_str(), &out);
    }
    if (out) print_owned(out);
    return st == GOV_OK ? kExitOk : report_error(st);
  }

  char* out = nullptr;
  gov_field* f = nullptr;
  gov_status st = gov_field_new(ffield.c_str(), &f);
  if (st == GOV_OK) st = gov_field_info(f, &out);
  gov_field_free(f);
  if (st != GOV_OK) return report_error(st);
  print_owned(out);
  return kExitOk;
}
