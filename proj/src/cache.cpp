#include "cache.hpp"

#include <chrono>
#include <fstream>

#include "json.hpp"

namespace governing {

using nlohmann::json;

namespace {

constexpr int kFormat = 1;

json element_to_json(const FieldElement& x) { return json::array({x.a().get_str(), x.b().get_str(), x.den().get_str()}); }

FieldElement element_from_json(const Field& F, const json& j) {
  return FieldElement(F, mpz_class(j.at(0).get<std::string>()), mpz_class(j.at(1).get<std::string>()),
                      mpz_class(j.at(2).get<std::string>()));
}

json ideal_to_json(const Ideal& I) { return json::array({I.a().get_str(), I.b().get_str(), I.c().get_str()}); }

Ideal ideal_from_json(const Field& F, const json& j) {
  return Ideal::from_hnf(F, mpz_class(j.at(0).get<std::string>()), mpz_class(j.at(1).get<std::string>()),
                         mpz_class(j.at(2).get<std::string>()));
}

VirtualUnitSource source_from_name(const std::string& s) {
  if (s == "torsion") return VirtualUnitSource::Torsion;
  if (s == "fundamental-unit") return VirtualUnitSource::FundamentalUnit;
  if (s == "class-lift") return VirtualUnitSource::ClassLift;
  fail(ErrorCode::MalformedToken, "unknown source " + s);
}

CachedField decode(const json& j, const Field& F, u64 p) {
  if (j.at("format").get<int>() != kFormat || j.at("disc").get<i64>() != F.disc() || j.at("p").get<u64>() != p)
    fail(ErrorCode::InvalidArgument, "cache key mismatch");
  CachedField c;
  c.data.field = F;
  std::vector<u64> inv = j.at("classes").at("invariants").get<std::vector<u64>>();
  std::vector<Ideal> gens;
  for (const auto& g : j.at("classes").at("generators")) gens.push_back(ideal_from_json(F, g));
  if (inv.size() != gens.size()) fail(ErrorCode::InvalidArgument, "class group entry is inconsistent");
  c.data.classes = ClassGroupData::from_structure(F, inv, gens);
  const json& u = j.at("units");
  c.data.units.torsion_order = u.at("torsion_order").get<u64>();
  c.data.units.torsion_generator = element_from_json(F, u.at("torsion_generator"));
  if (u.contains("fundamental_unit")) {
    c.data.units.fundamental_unit = element_from_json(F, u.at("fundamental_unit"));
    c.data.units.fundamental_norm = u.at("fundamental_norm").get<int>();
  }
  auto is_unit = [](const FieldElement& x) {
    return x.is_integral() && (x.norm() == 1 || x.norm() == -1);
  };
  if (!is_unit(c.data.units.torsion_generator)) fail(ErrorCode::InvalidArgument, "cached torsion generator is not a unit");
  if (c.data.units.fundamental_unit) {
    const FieldElement& e = *c.data.units.fundamental_unit;
    if (!is_unit(e) || e.norm() != c.data.units.fundamental_norm)
      fail(ErrorCode::InvalidArgument, "cached fundamental unit is not a unit");
  } else if (F.r1() == 2) {
    fail(ErrorCode::InvalidArgument, "cached real field without fundamental unit");
  }
  c.basis.field = F;
  c.basis.p = p;
  for (const auto& e : j.at("basis").at("entries")) {
    VirtualUnit v;
    v.value = element_from_json(F, e.at("value"));
    v.source = source_from_name(e.at("source").get<std::string>());
    v.witness = ideal_from_json(F, e.at("witness"));
    v.witness_place = e.value("witness_place", "");
    // (value) = witness^p, otherwise the entry is unusable
    if (!v.value.is_integral() || !(Ideal::principal(v.value) == v.witness.pow(static_cast<unsigned>(p))))
      fail(ErrorCode::InvalidArgument, "cached basis entry fails the witness check");
    c.basis.entries.push_back(std::move(v));
  }
  for (const auto& t : j.at("basis").at("avoid")) c.basis.avoid.push_back(parse_place(F, t.get<std::string>()));
  return c;
}

}  // namespace

std::filesystem::path cache_path(const std::filesystem::path& dir, const Field& F, u64 p) {
  return dir / ("gov-v1-disc" + std::to_string(F.disc()) + "-p" + std::to_string(p) + ".json");
}

std::optional<CachedField> cache_load(const std::filesystem::path& dir, const Field& F, u64 p,
                                      const std::vector<Place>& S) {
  std::ifstream in(cache_path(dir, F, p));
  if (!in) return std::nullopt;
  CachedField c;
  try {
    json j = json::parse(in);
    c = decode(j, F, p);
    exact_sequence_report(c.basis, c.data.classes);
  } catch (const std::exception&) {
    return std::nullopt;  // corrupt entries are recomputed and overwritten
  }
  for (const Place& v : S) {
    if (!v.is_finite()) continue;
    bool found = false;
    for (const Place& a : c.basis.avoid) found = found || a == v;
    if (!found) return std::nullopt;
  }
  return c;
}

bool cache_store(const std::filesystem::path& dir, const CachedField& entry) {
  const Field& F = entry.data.field;
  json gens = json::array();
  for (const Ideal& g : entry.data.classes.generators) gens.push_back(ideal_to_json(g));
  json units{{"torsion_order", entry.data.units.torsion_order},
             {"torsion_generator", element_to_json(entry.data.units.torsion_generator)}};
  if (entry.data.units.fundamental_unit) {
    units["fundamental_unit"] = element_to_json(*entry.data.units.fundamental_unit);
    units["fundamental_norm"] = entry.data.units.fundamental_norm;
  }
  json entries = json::array();
  for (const auto& e : entry.basis.entries)
    entries.push_back({{"value", element_to_json(e.value)},
                       {"source", std::string(source_name(e.source))},
                       {"witness", ideal_to_json(e.witness)},
                       {"witness_place", e.witness_place}});
  json avoid = json::array();
  for (const Place& v : entry.basis.avoid) avoid.push_back(v.token());
  const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  json j{{"format", kFormat},
         {"disc", F.disc()},
         {"field", F.spec()},
         {"p", entry.basis.p},
         {"created", now},
         {"classes", {{"invariants", entry.data.classes.invariants}, {"generators", gens}, {"h", entry.data.classes.h}}},
         {"units", units},
         {"basis", {{"entries", entries}, {"avoid", avoid}}}};
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto path = cache_path(dir, F, entry.basis.p);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return false;
    out << j.dump(1) << '\n';
    if (!out) return false;
  }
  std::filesystem::rename(tmp, path, ec);
  return !ec;
}

}  // namespace governing
