#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "virtual_units.hpp"

namespace governing {

/// Field data and a virtual-unit basis, as stored in one cache file.
struct CachedField {
  FieldData data;
  VirtualUnitBasis basis;
};

/// <dir>/gov-v1-disc<D>-p<p>.json
std::filesystem::path cache_path(const std::filesystem::path& dir, const Field& F, u64 p);

/// Returns the stored entry when it exists, parses, passes its consistency
/// checks and its avoidance set contains every finite place of S. Anything
/// else is a miss; unreadable entries are ignored.
std::optional<CachedField> cache_load(const std::filesystem::path& dir, const Field& F, u64 p,
                                      const std::vector<Place>& S);

/// Writes (replaces) the entry. Failures to write are reported as false.
bool cache_store(const std::filesystem::path& dir, const CachedField& entry);

}  // namespace governing
