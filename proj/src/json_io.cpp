#include "kkbounds/json_io.hpp"

#include <cmath>

namespace kkbounds {

using nlohmann::json;

json json_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

namespace {

json reals(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(json_real(x));
  return out;
}

}  // namespace

json to_json(const QuadratureRule& rule) {
  json out{{"kind", rule.kind},         {"n", rule.n}, {"k", rule.k}, {"nodes", reals(rule.nodes)},
           {"weights", reals(rule.weights)}, {"exact_degree", rule.exact_degree}};
  if (rule.s) out["s"] = *rule.s;
  return out;
}

json to_json(const DesignCertificate& cert) {
  json moments = json::array();
  for (const auto& [l, m] : cert.even_moments) moments.push_back({{"l", l}, {"M", m}});
  return {{"k", cert.k},
          {"N", cert.N},
          {"n", cert.n},
          {"even_moments", moments},
          {"max_even_moment_residual", cert.max_even_moment_residual},
          {"tolerance", cert.tolerance},
          {"is_design", cert.is_design}};
}

json to_json(const CoveringRadius& cov) {
  return {{"r", cov.r},
          {"witness", reals(cov.witness)},
          {"method", cov.method},
          {"starts", cov.starts},
          {"active_points", cov.active_points},
          {"smoothed_gradient_norm", cov.smoothed_gradient_norm}};
}

json to_json(const BoundReport& r) {
  json out{{"kind", to_string(r.kind)},
           {"n", r.n},
           {"k", r.k},
           {"N", r.N},
           {"nodes", reals(r.nodes)},
           {"weights", reals(r.weights)},
           {"bound_value", json_real(r.bound_value)},
           {"per_point_bound", json_real(r.per_point_bound)},
           {"interpolant_t_coeffs", reals(r.interpolant_t_coeffs)},
           {"interpolant_integral", json_real(r.interpolant_integral)},
           {"sign_certificate", {{"sign", to_string(r.certificate.sign)}, {"source", to_string(r.certificate.source)}}},
           {"one_sided_margin", json_real(r.one_sided_margin)},
           {"interpolation_residual", r.interpolation_residual},
           {"exactness_residual", r.exactness_residual},
           {"numeric_derivatives", r.numeric_derivatives},
           {"potential", {{"name", r.potential_name}, {"spec", r.potential_spec}}},
           {"notes", r.notes}};
  if (r.s) out["s"] = *r.s;
  if (r.cross_check) out["cross_check"] = json_real(*r.cross_check);
  if (r.code_r) out["code_r"] = *r.code_r;
  return out;
}

json to_json(const ExtremizationResult& e) {
  return {{"direction", to_string(e.direction)},
          {"value", json_real(e.value)},
          {"argpoint", reals(e.argpoint)},
          {"restarts", e.restarts},
          {"stationarity_norm", json_real(e.stationarity_norm)},
          {"method", e.method}};
}

json to_json(const CertificationReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  json out{{"design", to_json(rep.design)},
           {"covering_radius", to_json(rep.covering)},
           {"min", to_json(rep.minimum)},
           {"max", to_json(rep.maximum)},
           {"checks", checks},
           {"skipped", rep.skipped},
           {"all_passed", rep.all_passed}};
  out["lower_bound"] = rep.lower ? to_json(*rep.lower) : json(nullptr);
  out["upper_bound_finite"] = rep.upper_finite ? to_json(*rep.upper_finite) : json(nullptr);
  out["upper_bound_s"] = rep.upper_s ? to_json(*rep.upper_s) : json(nullptr);
  return out;
}

json to_json(const AverageCheck& c) {
  return {{"mean", c.mean},
          {"expected", c.expected},
          {"deviation", c.deviation},
          {"standard_error", c.standard_error},
          {"samples", c.samples}};
}

}  // namespace kkbounds
