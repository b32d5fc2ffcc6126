#include "qdo/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "qdo/errors.hpp"

namespace qdo {
namespace {

nlohmann::json vec_json(const Vector& v) {
  return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
}

nlohmann::json range_json(const Range& r) {
  return {{"min", r.min}, {"max", r.max}, {"steps", r.steps}};
}

}  // namespace

nlohmann::json to_json(const SiteSet& sites) {
  nlohmann::json pos = nlohmann::json::array();
  for (const Vec3& p : sites.positions) pos.push_back({p.x(), p.y(), p.z()});
  nlohmann::json j;
  j["kind"] = std::string(to_string(sites.kind));
  j["rho"] = sites.rho;
  j["theta"] = sites.theta ? nlohmann::json(*sites.theta) : nlohmann::json(nullptr);
  j["positions"] = std::move(pos);
  return j;
}

SiteSet site_set_from_json(const nlohmann::json& j) {
  try {
    SiteSet s;
    s.kind = parse_geometry_kind(j.at("kind").get<std::string>());
    s.rho = j.at("rho").get<double>();
    if (j.contains("theta") && !j["theta"].is_null()) s.theta = j["theta"].get<double>();
    for (const auto& p : j.at("positions")) {
      if (p.size() != 3) throw DomainError("positions must be 3-vectors");
      s.positions.emplace_back(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed site set JSON: ") + e.what());
  }
}

nlohmann::json to_json(const EnergyBreakdown& e) {
  return {{"binding_e", e.binding_e}, {"delta2", e.delta2},     {"delta3", e.delta3},
          {"delta4", e.delta4},       {"delta_mb", e.delta_mb}, {"s_inf", e.s_inf},
          {"k_used", e.k_used},       {"converged", e.converged}, {"delta", e.delta}};
}

nlohmann::json to_json(const TangleReport& r) {
  return {{"tau_mode", vec_json(r.tau_mode)},
          {"reduced", vec_json(r.reduced)},
          {"tau_tilde_total", r.tau_tilde_total},
          {"monogamy_margins", vec_json(r.monogamy_margins)},
          {"bound_rhs", r.bound_rhs},
          {"bound_residual", r.bound_residual},
          {"min_margin", r.min_margin},
          {"monogamy_violations", r.monogamy_violations},
          {"bound_violated", r.bound_violated}};
}

nlohmann::json to_json(const BoundaryResult& b) {
  return {{"mode", std::string(to_string(b.mode))},
          {"fixed", std::isfinite(b.fixed) ? nlohmann::json(b.fixed) : nlohmann::json(nullptr)},
          {"root", b.root},
          {"bracket", {b.bracket_lo, b.bracket_hi}},
          {"objective", {b.objective_lo, b.objective_hi}},
          {"residual", b.residual}};
}

nlohmann::json to_json(const LatticeCurveMeta& m) {
  nlohmann::json nbrs = nlohmann::json::array();
  for (const Neighbor& n : m.neighbors) {
    nbrs.push_back({{"index", n.index},
                    {"shell", n.shell},
                    {"distance", n.distance},
                    {"displacement", {n.displacement.x(), n.displacement.y(), n.displacement.z()}}});
  }
  return {{"n_sites", m.n_sites}, {"central_site", m.central}, {"neighbors", std::move(nbrs)}};
}

nlohmann::json to_json(const ScanSpec& s) {
  nlohmann::json j{{"scan", std::string(to_string(s.kind))},
                   {"k_max", s.k_max},
                   {"threads", s.threads},
                   {"mode_budget", s.mode_budget}};
  switch (s.kind) {
    case ScanKind::three_mode:
      j["kappa"] = range_json(s.kappa);
      j["beta"] = range_json(s.beta);
      break;
    case ScanKind::lattice_curve:
      j["rho"] = range_json(s.rho);
      j["lattice"] = std::string(to_string(s.lattice));
      j["dims"] = s.dims;
      break;
    case ScanKind::boundary:
      j["rho"] = range_json(s.rho);
      j["theta"] = range_json(s.theta);
      j["boundary_mode"] = std::string(to_string(s.boundary_mode));
      j["boundary_tol"] = s.boundary_tol;
      if (s.boundary_target == BoundaryTarget::lattice) {
        j["target"] = "lattice";
        j["lattice"] = std::string(to_string(s.lattice));
        j["dims"] = s.dims;
      } else if (s.boundary_target == BoundaryTarget::chain) {
        j["target"] = "chain";
        j["chain_n"] = s.chain_n;
      } else {
        j["target"] = "trimer";
      }
      break;
    case ScanKind::chain:
      j["chain_n"] = s.chain_n;
      [[fallthrough]];
    default:
      j["rho"] = range_json(s.rho);
      j["theta"] = range_json(s.theta);
  }
  return j;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  for (const std::string& c : t.columns) os << c << ',';
  os << "status\n";
  for (const Table::Row& r : t.rows) {
    for (double v : r.values) os << format_double(v) << ',';
    os << r.status << '\n';
  }
}

}  // namespace qdo
