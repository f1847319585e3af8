// JSON views of algebra data, kernel bases, and verification reports; every
// document carries schema_version and uses ordered keys so identical inputs
// produce byte-identical output
#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "walg/loopgeo.hpp"
#include "walg/screening.hpp"

namespace walg {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// doubled weight as a reduced fraction string: 4 -> "2", 3 -> "3/2"
std::string weight_str(int w2);

Json freport_json(const FReport& r);
Json algebra_json(const LieAlg& g, const AdxGrading& gr);
Json report_json(const VerifyReport& r);
Json main2_json(const Main2Report& r);
Json kernel_json(const KernelBasis& kb);
Json generators_json(const std::map<int, std::vector<DiffPoly>>& gens);
Json hierarchy_json(const Hierarchy& h);

}  // namespace walg
