#include "siegel/serialize.hpp"

#include <algorithm>
#include <cmath>

#include "siegel/error.hpp"

namespace siegel {

namespace {

std::string str(const mpq_class& q) { return q.get_str(); }

int matrix_size(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw Error(ErrorKind::MalformedInput, "matrix needs fields n and entries");
  if (!j["n"].is_number_integer()) throw Error(ErrorKind::MalformedInput, "n must be an integer");
  const auto n = j["n"].get<long long>();
  if (n < 2 || n > 64) throw Error(ErrorKind::MalformedInput, "n must be in 2..64");
  const auto& e = j["entries"];
  if (!e.is_array() || e.size() != static_cast<std::size_t>(n * n))
    throw Error(ErrorKind::MalformedInput, "entries must be an array of n*n values");
  return static_cast<int>(n);
}

}  // namespace

Json to_json(const SquareMatrix& m) {
  return {{"n", m.size()}, {"entries", std::vector<double>(m.entries().begin(), m.entries().end())}};
}

SquareMatrix square_matrix_from_json(const Json& j) {
  const int n = matrix_size(j);
  std::vector<double> v;
  for (const auto& x : j["entries"]) {
    if (!x.is_number()) throw Error(ErrorKind::MalformedInput, "entries must be numbers");
    v.push_back(x.get<double>());
  }
  try {
    return SquareMatrix(n, std::move(v));
  } catch (const Error& e) {
    throw Error(ErrorKind::MalformedInput, e.what());
  }
}

Json to_json(const IntMatrix& m) {
  Json entries = Json::array();
  for (const auto& x : m.entries()) entries.push_back(x.get_str());
  return {{"n", m.size()}, {"entries", entries}};
}

IntMatrix int_matrix_from_json(const Json& j) {
  const int n = matrix_size(j);
  std::vector<mpz_class> v;
  for (const auto& x : j["entries"]) {
    if (x.is_number_integer()) {
      v.emplace_back(std::to_string(x.get<long long>()));
    } else if (x.is_string()) {
      mpz_class z;
      if (z.set_str(x.get<std::string>(), 10) != 0)
        throw Error(ErrorKind::MalformedInput, "integer entry is not a decimal string");
      v.push_back(z);
    } else {
      throw Error(ErrorKind::MalformedInput, "integer entries must be strings or integers");
    }
  }
  return IntMatrix(n, std::move(v));
}

Json to_json(const Tolerances& t) {
  return {{"recon_tol", t.recon_tol},       {"ortho_tol", t.ortho_tol},
          {"det_tol", t.det_tol},           {"singular_tol", t.singular_tol},
          {"cond_max", t.cond_max}};
}

Json to_json(const IwasawaFactors& f) {
  return {{"k", to_json(f.k)}, {"a", f.a}, {"u", strict_upper(f.u)}, {"b", f.b}};
}

Json to_json(const SymbolicVolume& v) {
  const SymbolicVolume c = v.canonical();
  Json zeta = Json::object();
  for (const auto& [i, e] : c.zetas()) zeta[std::to_string(i)] = e;
  return {{"expression", c.to_string()},
          {"structural", v.to_string()},
          {"log_value", v.log_value()},
          {"value", v.value()},
          {"pow2", str(c.pow2())},
          {"pow3", str(c.pow3())},
          {"pow_pi", str(c.pow_pi())},
          {"zeta", zeta}};
}

Json to_json(const MonteCarloEstimate& e) {
  return {{"estimate", e.estimate}, {"std_error", e.std_error}, {"samples", e.samples}};
}

Json to_json(const ReductionResult& r) {
  double u_max = 0.0;
  for (double x : strict_upper(r.factors.u)) u_max = std::max(u_max, std::abs(x));
  return {{"gamma", to_json(r.gamma.matrix())},
          {"sigma", to_json(r.sigma)},
          {"iterations", r.iterations},
          {"status", std::string(to_string(r.status))},
          {"b", r.factors.b},
          {"u_max", u_max}};
}

Json to_json(const FilterTrace& t) {
  Json checks = Json::array();
  for (const auto& c : t.checks)
    checks.push_back(
        {{"name", c.name}, {"i", c.i}, {"j", c.j}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"passed", c.passed}});
  return {{"violations", t.violations()}, {"checks", checks}};
}

Json to_json(const IntersectionReport& r) {
  Json j = {{"gamma", to_json(r.gamma.matrix())},
            {"status", std::string(to_string(r.status))},
            {"height", height(r.gamma).get_str()},
            {"samples_used", r.samples_used},
            {"reason", r.reason}};
  if (r.witness) {
    j["witness"] = {{"b", r.witness->point.b},
                    {"u", strict_upper(r.witness->point.u)},
                    {"s", to_json(r.witness->s)},
                    {"gamma_s", to_json(r.witness->gamma_s)},
                    {"excess", r.witness->excess}};
    j["filter_trace"] = to_json(r.filter_trace);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const EnumerationSummary& s) {
  return {{"n", s.n},
          {"height_cap", s.height_cap},
          {"height_bound", s.height_bound},
          {"candidates", s.candidates},
          {"witnessed", s.witnessed},
          {"excluded", s.excluded},
          {"unknown", s.unknown},
          {"lower_bound", s.lower_bound},
          {"lower_bound_met", s.lower_bound_met},
          {"upper_log_count", s.upper_log_count},
          {"chain_violations", s.chain_violations},
          {"seed", s.seed},
          {"budgets", {{"witness_budget", s.budget}}}};
}

Json to_json(const GrowthRow& r) {
  return {{"n", r.n},
          {"log_vol_siegel", r.log_vol_siegel},
          {"log_vol_quotient", r.log_vol_quotient},
          {"log_C", r.log_C},
          {"log_height_bound", r.log_height_bound}};
}

Json to_json(const FormulaCheck& c) {
  return {{"formula", c.formula},
          {"n", c.n},
          {"structural", c.structural.canonical().to_string()},
          {"displayed", c.displayed.canonical().to_string()},
          {"structural_value", c.structural.value()},
          {"displayed_value", c.displayed.value()},
          {"exact_match", c.exact_match},
          {"rel_diff", c.rel_diff},
          {"discrepancy", c.agrees() ? Json(nullptr) : Json(c.discrepancy)}};
}

}  // namespace siegel
