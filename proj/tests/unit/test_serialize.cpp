#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "qdo/coupling.hpp"
#include "qdo/errors.hpp"
#include "qdo/gaussian_state.hpp"
#include "qdo/serialize.hpp"

using namespace qdo;
using std::numbers::pi;

TEST_CASE("site set JSON round trip") {
  const SiteSet t = build_trimer(2.5, 2.0);
  const nlohmann::json j = to_json(t);
  CHECK(j["kind"] == "trimer");
  CHECK(j["rho"] == 2.5);
  CHECK(j["theta"] == 2.0);
  CHECK(j["positions"].size() == 3);
  const SiteSet back = site_set_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.kind == t.kind);
  CHECK(back.theta == t.theta);
  for (std::size_t i = 0; i < 3; ++i) CHECK(back.positions[i] == t.positions[i]);

  const std::vector<int> d{2, 2};
  CHECK(to_json(build_lattice(GeometryKind::square, d, 1.0))["theta"].is_null());
  CHECK_THROWS_AS(site_set_from_json(nlohmann::json{{"kind", "trimer"}}), DomainError);
}

TEST_CASE("report JSON") {
  const SiteSet s = build_trimer(3.0, pi / 2.0);
  const ModeSpectrum sp = spectrum(build_potential(build_coupling(s)));
  const nlohmann::json e = to_json(energy_breakdown(sp, s, 10));
  for (const char* k : {"binding_e", "delta2", "delta3", "delta4", "delta_mb", "s_inf", "k_used",
                        "converged"}) {
    CHECK(e.contains(k));
  }
  const nlohmann::json r = to_json(monogamy_audit(ground_state_cm(sp)));
  CHECK(r["tau_mode"].size() == 9);
  CHECK(r["bound_violated"] == false);
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(std::stod(format_double(pi)) == pi);
}

TEST_CASE("CSV layout") {
  Table t;
  t.columns = {"a", "b"};
  t.rows.push_back({{1.0, 0.5}, "ok"});
  t.rows.push_back({{std::nan(""), 2.0}, "not_positive_definite"});
  std::ostringstream os;
  write_csv(os, t);
  CHECK(os.str() == "a,b,status\n1,0.5,ok\nnan,2,not_positive_definite\n");
}
