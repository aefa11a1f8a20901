#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kkbounds/codes.hpp"
#include "kkbounds/errors.hpp"
#include "kkbounds/json_io.hpp"
#include "kkbounds/polarization.hpp"
#include "kkbounds/potential.hpp"
#include "kkbounds/quadrature.hpp"
#include "kkbounds/signed_measure.hpp"

namespace kkbounds::cli {

namespace {

using nlohmann::json;

struct Options {
  std::uint64_t seed = 0;
  int restarts = 128;

  int n = 0;
  int k = 0;
  std::size_t N = 0;
  std::string kind;
  std::optional<double> s;
  std::string code;
  std::string pot;
  std::string direction = "both";
  bool list = false;
  std::string dump;
  bool csv = false;
  std::vector<int> ns;
  std::vector<int> ks;
  std::vector<std::string> pots;
};

SearchOptions search(const Options& o) { return {o.seed, o.restarts}; }

SphericalCode resolve_code(const std::string& ref) {
  constexpr std::string_view prefix = "catalog:";
  if (ref.rfind(prefix, 0) == 0) return catalog(std::string_view(ref).substr(prefix.size()));
  return load_code(ref);
}

json base_config(const std::string& command, const Options& o) {
  return {{"command", command}, {"seed", o.seed}, {"restarts", o.restarts}};
}

void emit(std::ostream& out, const nlohmann::ordered_json& doc) { out << doc.dump(2) << "\n"; }

// The resolved configuration leads every document.
nlohmann::ordered_json with_config(const json& body, const json& config) {
  nlohmann::ordered_json doc;
  doc["config"] = nlohmann::ordered_json(config);
  for (const auto& [key, value] : body.items()) doc[key] = nlohmann::ordered_json(value);
  return doc;
}

void cmd_quad(const Options& o, std::ostream& out) {
  QuadratureRule rule;
  if (o.kind == "alpha") {
    rule = rule_alpha(o.n, o.k);
  } else if (o.kind == "beta") {
    rule = rule_beta(o.n, o.k);
  } else {
    if (!o.s) throw InputError("--kind lambda needs --s");
    rule = rule_lambda(SignedMeasureContext(o.n, o.k, *o.s));
  }
  json config = base_config("quad", o);
  config.update({{"n", o.n}, {"k", o.k}, {"kind", o.kind}});
  if (o.s) config["s"] = *o.s;
  emit(out, with_config(to_json(rule), config));
}

void cmd_verify(const Options& o, std::ostream& out) {
  const SphericalCode code = resolve_code(o.code);
  json config = base_config("verify", o);
  config.update({{"code", o.code}, {"k", o.k}});
  emit(out, with_config(to_json(is_kk_design(code, o.k)), config));
}

void cmd_bounds(const Options& o, std::ostream& out) {
  const Potential pot = parse_potential(o.pot);
  std::optional<SphericalCode> code;
  std::optional<double> r;
  int n = o.n;
  std::size_t N = o.N;
  if (!o.code.empty()) {
    code = resolve_code(o.code);
    if (n != 0 && n != code->dimension()) throw InputError("--n disagrees with the dimension of --code");
    if (N != 0 && N != code->size()) throw InputError("--N disagrees with the size of --code");
    n = code->dimension();
    N = code->size();
    r = covering_radius_r(*code, search(o)).r;
  }
  if (n == 0 || N == 0) throw InputError("bounds needs --n and --N (or --code)");

  json config = base_config("bounds", o);
  config.update({{"n", n}, {"k", o.k}, {"N", N}, {"pot", o.pot}});
  if (o.s) config["s"] = *o.s;
  if (!o.code.empty()) config["code"] = o.code;

  json body;
  body["lower"] = to_json(lower_bound(n, o.k, N, pot));
  if (o.s) {
    body["upper"] = to_json(upper_bound_s(n, o.k, N, *o.s, pot, r));
  } else {
    body["upper"] = to_json(upper_bound_finite(n, o.k, N, pot));
  }
  if (r) body["code_r"] = *r;
  emit(out, with_config(body, config));
}

void cmd_polarize(const Options& o, std::ostream& out) {
  if (o.direction != "min" && o.direction != "max" && o.direction != "both")
    throw InputError("--direction must be min, max or both");
  const SphericalCode code = resolve_code(o.code);
  const Potential pot = parse_potential(o.pot);
  json config = base_config("polarize", o);
  config.update({{"code", o.code}, {"pot", o.pot}, {"direction", o.direction}});
  json body;
  if (o.direction != "max") body["min"] = to_json(extremize(code, pot, Direction::Min, search(o)));
  if (o.direction != "min") body["max"] = to_json(extremize(code, pot, Direction::Max, search(o)));
  emit(out, with_config(body, config));
}

void cmd_certify(const Options& o, std::ostream& out) {
  const SphericalCode code = resolve_code(o.code);
  const Potential pot = parse_potential(o.pot);
  json config = base_config("certify", o);
  config.update({{"code", o.code}, {"k", o.k}, {"pot", o.pot}});
  emit(out, with_config(to_json(certify_design(code, o.k, pot, search(o))), config));
}

void cmd_catalog(const Options& o, std::ostream& out) {
  if (o.list == !o.dump.empty()) throw InputError("catalog needs exactly one of --list and --dump <name>");
  json config = base_config("catalog", o);
  if (o.list) {
    emit(out, with_config({{"names", catalog_names()}}, config));
    return;
  }
  config["dump"] = o.dump;
  emit(out, with_config(json::parse(code_to_json(catalog(o.dump))), config));
}

std::string csv_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

void cmd_report(const Options& o, std::ostream& out) {
  if (!o.csv) throw InputError("report only supports --csv output");
  const std::size_t N = o.N == 0 ? 1 : o.N;
  json config = base_config("report", o);
  config.update({{"n", o.ns}, {"k", o.ks}, {"N", N}, {"pot", o.pots}});
  if (o.s) config["s"] = *o.s;
  out << "# config " << config.dump() << "\n";
  out << "n,k,N,pot,sign,lower_kind,lower,upper_finite,s,upper_s\n";
  for (int n : o.ns) {
    for (int k : o.ks) {
      for (const auto& spec : o.pots) {
        const Potential pot = parse_potential(spec);
        std::string lower_kind, lower, upper, upper_s, s;
        const std::string sign = to_string(pot.certify_sign(k, 1.0).sign);
        try {
          const BoundReport r = lower_bound(n, k, N, pot);
          lower_kind = to_string(r.kind);
          lower = csv_real(r.bound_value);
        } catch (const PreconditionError&) {
        }
        try {
          upper = csv_real(upper_bound_finite(n, k, N, pot).bound_value);
        } catch (const PreconditionError&) {
        }
        if (o.s) {
          s = csv_real(*o.s);
          try {
            upper_s = csv_real(upper_bound_s(n, k, N, *o.s, pot).bound_value);
          } catch (const PreconditionError&) {
          }
        }
        out << n << ',' << k << ',' << N << ",\"" << spec << "\"," << sign << ',' << lower_kind << ',' << lower
            << ',' << upper << ',' << s << ',' << upper_s << "\n";
      }
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Universal polarization bounds for spherical (k,k)-designs", "kkbounds"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "seed of the randomized sphere searches")->capture_default_str();
  app.add_option("--restarts", o.restarts, "random restarts for n >= 4")->check(CLI::PositiveNumber)->capture_default_str();

  auto* quad = app.add_subcommand("quad", "quadrature rule nodes and weights");
  quad->add_option("--n", o.n, "dimension")->required();
  quad->add_option("--k", o.k, "design order")->required();
  quad->add_option("--kind", o.kind, "rule kind")->required()->check(CLI::IsMember({"alpha", "beta", "lambda"}));
  quad->add_option("--s", o.s, "endpoint of the lambda rule");

  auto* verify = app.add_subcommand("verify", "moment test for a (k,k)-design");
  verify->add_option("--code", o.code, "code file or catalog:<name>")->required();
  verify->add_option("--k", o.k, "design order")->required();

  auto* bounds = app.add_subcommand("bounds", "universal lower and upper bounds");
  bounds->add_option("--n", o.n, "dimension");
  bounds->add_option("--k", o.k, "design order")->required();
  bounds->add_option("--N", o.N, "code cardinality");
  bounds->add_option("--pot", o.pot, "potential spec")->required();
  bounds->add_option("--s", o.s, "use the signed-measure upper bound at this s");
  bounds->add_option("--code", o.code, "code whose covering radius must stay below s");

  auto* polarize = app.add_subcommand("polarize", "extremize the potential of a code");
  polarize->add_option("--code", o.code, "code file or catalog:<name>")->required();
  polarize->add_option("--pot", o.pot, "potential spec")->required();
  polarize->add_option("--direction", o.direction, "min, max or both")->capture_default_str();

  auto* certify = app.add_subcommand("certify", "design test, bounds and extremization in one report");
  certify->add_option("--code", o.code, "code file or catalog:<name>")->required();
  certify->add_option("--k", o.k, "design order")->required();
  certify->add_option("--pot", o.pot, "potential spec")->required();

  auto* cat = app.add_subcommand("catalog", "list or dump catalog codes");
  cat->add_flag("--list", o.list, "list catalog names");
  cat->add_option("--dump", o.dump, "print a catalog code as code JSON");

  auto* report = app.add_subcommand("report", "CSV table of bounds");
  report->add_flag("--csv", o.csv, "CSV output");
  report->add_option("--n", o.ns, "dimensions")->required()->delimiter(',');
  report->add_option("--k", o.ks, "design orders")->required()->delimiter(',');
  report->add_option("--pot", o.pots, "potential specs (repeatable)")->required();
  report->add_option("--N", o.N, "code cardinality (default 1: per-point bounds)");
  report->add_option("--s", o.s, "also tabulate the signed-measure upper bound at this s");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (quad->parsed()) cmd_quad(o, out);
    else if (verify->parsed()) cmd_verify(o, out);
    else if (bounds->parsed()) cmd_bounds(o, out);
    else if (polarize->parsed()) cmd_polarize(o, out);
    else if (certify->parsed()) cmd_certify(o, out);
    else if (cat->parsed()) cmd_catalog(o, out);
    else if (report->parsed()) cmd_report(o, out);
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace kkbounds::cli
