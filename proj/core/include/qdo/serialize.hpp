#pragma once

#include <iosfwd>

#include "json.hpp"
#include "qdo/dispersion.hpp"
#include "qdo/entanglement.hpp"
#include "qdo/geometry.hpp"
#include "qdo/scan.hpp"

namespace qdo {

/// {"kind", "rho", "theta", "positions": [[x, y, z], ...]}; theta is null when absent.
nlohmann::json to_json(const SiteSet& sites);
/// Inverse of to_json(SiteSet). Throws DomainError on malformed input.
SiteSet site_set_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EnergyBreakdown& e);
nlohmann::json to_json(const TangleReport& r);
nlohmann::json to_json(const BoundaryResult& b);
nlohmann::json to_json(const LatticeCurveMeta& m);
nlohmann::json to_json(const ScanSpec& s);

/// Formats a double with 17 significant digits ("nan", "inf", "-inf" for non-finite).
std::string format_double(double x);

/// Header row of column names plus "status", then one line per row.
void write_csv(std::ostream& os, const Table& t);

}  // namespace qdo
