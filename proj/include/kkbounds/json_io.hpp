#pragma once

#include "json.hpp"
#include "kkbounds/codes.hpp"
#include "kkbounds/polarization.hpp"
#include "kkbounds/quadrature.hpp"

namespace kkbounds {

/// Finite values as numbers; +-infinity as the strings "inf" and "-inf".
nlohmann::json json_real(double x);

nlohmann::json to_json(const QuadratureRule& rule);
nlohmann::json to_json(const DesignCertificate& cert);
nlohmann::json to_json(const CoveringRadius& cov);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const ExtremizationResult& result);
nlohmann::json to_json(const CertificationReport& report);
nlohmann::json to_json(const AverageCheck& check);

}  // namespace kkbounds
