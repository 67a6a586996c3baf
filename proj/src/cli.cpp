#include "siegel/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "siegel/bounds.hpp"
#include "siegel/error.hpp"
#include "siegel/haar.hpp"
#include "siegel/intersections.hpp"
#include "siegel/kernels.hpp"
#include "siegel/reduction.hpp"
#include "siegel/serialize.hpp"
#include "siegel/volumes.hpp"

namespace siegel {

namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorKind::MalformedConfig, what);
}

double positive_real(const Json& v, const std::string& key) {
  if (!v.is_number() || !(v.get<double>() > 0.0)) config_error(key + " must be a positive number");
  return v.get<double>();
}

long positive_integer(const Json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 1)
    config_error(key + " must be a positive integer");
  return static_cast<long>(v.get<long long>());
}

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string read_stream(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Json parse_input_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, std::string("input is not valid JSON: ") + e.what());
  }
}

struct Context {
  RunConfig cfg;
  std::ostream& out;

  Json meta() const {
    return {{"seed", cfg.seed}, {"tolerances", to_json(cfg.tolerances)},
            {"tool_version", kToolVersion}};
  }

  std::string csv_meta() const {
    const auto& t = cfg.tolerances;
    return "# tool_version=" + std::string(kToolVersion) + " seed=" + std::to_string(cfg.seed) +
           " recon_tol=" + csv_number(t.recon_tol) + " ortho_tol=" + csv_number(t.ortho_tol) +
           " det_tol=" + csv_number(t.det_tol) + " singular_tol=" + csv_number(t.singular_tol) +
           " cond_max=" + csv_number(t.cond_max) + "\n";
  }

  void emit(Json report) const {
    report["meta"] = meta();
    out << report.dump(cfg.output_format == "pretty" ? 2 : -1) << "\n";
  }

  void require_format(std::initializer_list<const char*> allowed, const char* command) const {
    for (const char* f : allowed)
      if (cfg.output_format == f) return;
    throw CLI::ValidationError("--format",
                               cfg.output_format + " output is not available for " + command);
  }
};

struct MatrixInput {
  std::string matrix;
  std::string input;

  void add_to(CLI::App* sub) {
    sub->add_option("--matrix", matrix, "Matrix as JSON {\"n\": N, \"entries\": [...]}");
    sub->add_option("--input", input, "File holding the matrix JSON (default: stdin)");
  }

  SquareMatrix read() const {
    std::string text = matrix;
    if (text.empty() && !input.empty()) {
      std::ifstream f(input);
      if (!f) throw Error(ErrorKind::MalformedInput, "cannot read " + input);
      text = read_stream(f);
    }
    if (text.empty()) text = read_stream(std::cin);
    return square_matrix_from_json(parse_input_json(text));
  }
};

void cmd_decompose(const Context& ctx, const SquareMatrix& g, const SiegelParams& p,
                   double member_tol) {
  ctx.require_format({"json", "pretty"}, "decompose");
  const IwasawaFactors f = decompose(g, ctx.cfg.tolerances);
  Json j = to_json(f);
  j["recon_err"] = max_abs_diff(recompose(f), g);
  j["membership"] = std::string(to_string(siegel_membership(f, p, member_tol)));
  j["params"] = {{"t", p.t}, {"lambda", p.lambda}, {"tol", member_tol}};
  ctx.emit(j);
}

void cmd_reduce(const Context& ctx, const SquareMatrix& g) {
  ctx.require_format({"json", "pretty"}, "reduce");
  const int max_iter = ctx.cfg.max_iter ? static_cast<int>(*ctx.cfg.max_iter) : -1;
  const ReductionResult r = siegel_reduce(g, max_iter, ctx.cfg.tolerances);
  Json j = to_json(r);
  j["membership"] =
      std::string(to_string(siegel_membership(r.factors, SiegelParams::minimal(), 1e-9)));
  ctx.emit(j);
}

void cmd_volume(const Context& ctx, const std::string& object, int n, const SiegelParams& p) {
  ctx.require_format({"json", "csv", "pretty"}, "volume");
  SymbolicVolume v;
  std::optional<FormulaCheck> check;
  if (object == "so") {
    v = vol_so(n);
  } else if (object == "siegel") {
    v = vol_siegel(n, p);
    const SiegelParams m = SiegelParams::minimal();
    if (p.t == m.t && p.lambda == m.lambda)
      check = check_formula("vol_siegel_minimal", n, v, displayed::vol_siegel_minimal(n));
  } else if (object == "quotient") {
    v = vol_quotient(n);
    check = check_formula("vol_quotient", n, v, displayed::vol_quotient(n));
  } else if (object == "ratio") {
    v = ratio_C(n);
    check = check_formula("ratio_C", n, v, displayed::ratio_C(n));
  } else if (object == "symmetric") {
    v = vol_symmetric_space(n);
  } else if (object == "harder") {
    v = harder_volume(n);
  } else {
    v = normalization_ratio(n);
    check = check_formula("normalization_ratio", n, v, displayed::normalization_ratio(n));
  }
  const std::string expr = v.canonical().to_string();
  if (ctx.cfg.output_format == "csv") {
    ctx.out << ctx.csv_meta() << "object,n,expression,log_value,value\n"
            << object << "," << n << ",\"" << expr << "\"," << csv_number(v.log_value()) << ","
            << csv_number(v.value()) << "\n";
    return;
  }
  if (ctx.cfg.output_format == "pretty") {
    ctx.out << expr << "\n"
            << "value = " << short_number(v.value()) << "\n"
            << "log   = " << short_number(v.log_value()) << "\n";
    if (check && !check->agrees())
      ctx.out << "displayed simplification differs by a factor " << check->discrepancy << "\n";
    return;
  }
  Json j = to_json(v);
  j["object"] = object;
  j["n"] = n;
  if (object == "siegel") j["params"] = {{"t", p.t}, {"lambda", p.lambda}};
  if (check) j["check"] = to_json(*check);
  ctx.emit(j);
}

void cmd_growth(const Context& ctx, int n_max) {
  ctx.require_format({"json", "csv", "pretty"}, "growth-table");
  const auto rows = ctx.cfg.threads > 1 ? growth_table_parallel(n_max, ctx.cfg.threads)
                                        : growth_table(n_max);
  if (ctx.cfg.output_format == "csv") {
    ctx.out << ctx.csv_meta() << "n,log_vol_siegel,log_vol_quotient,log_C,log_height_bound\n";
    for (const auto& r : rows)
      ctx.out << r.n << "," << csv_number(r.log_vol_siegel) << ","
              << csv_number(r.log_vol_quotient) << "," << csv_number(r.log_C) << ","
              << csv_number(r.log_height_bound) << "\n";
    return;
  }
  Json arr = Json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  ctx.emit({{"rows", arr}});
}

void cmd_sample(const Context& ctx, int n, const SiegelParams& p, std::optional<double> b_min_opt,
                long points) {
  ctx.require_format({"json", "pretty"}, "sample");
  const double b_min = b_min_opt ? *b_min_opt : p.t / 16.0;
  if (points > 0) {
    RngStream rng(ctx.cfg.seed, 0);
    Json arr = Json::array();
    for (long i = 0; i < points; ++i) {
      const auto pt = sample_siegel_point(n, p, b_min, rng);
      arr.push_back({{"b", pt.b}, {"u", strict_upper(pt.u)}, {"k", to_json(pt.k)},
                     {"weight", pt.weight}});
    }
    ctx.emit({{"points", arr}, {"b_min", b_min}});
    return;
  }
  const auto samples = static_cast<std::uint64_t>(ctx.cfg.mc_samples);
  const MonteCarloEstimate e =
      ctx.cfg.threads > 1
          ? siegel_density_mc_parallel(n, p, b_min, samples, ctx.cfg.seed, ctx.cfg.threads)
          : siegel_density_mc_serial(n, p, b_min, samples, ctx.cfg.seed);
  Json j = to_json(e);
  j["seed"] = ctx.cfg.seed;
  j["b_min"] = b_min;
  j["n"] = n;
  j["closed_form"] = 2.0 * truncated_a_integral(n, p.t, b_min);
  j["truncation_bound"] = truncation_bound(n, p.t, b_min);
  ctx.emit(j);
}

void cmd_enumerate(const Context& ctx, int n, const SiegelParams& p) {
  ctx.require_format({"json", "pretty"}, "enumerate-intersections");
  WitnessSearchConfig wcfg;
  wcfg.budget = static_cast<std::uint64_t>(ctx.cfg.witness_budget);
  const long cap = ctx.cfg.height_cap ? *ctx.cfg.height_cap : -1;
  const EnumerationResult r =
      enumerate_intersections(n, p, wcfg, ctx.cfg.seed, cap, ctx.cfg.threads);
  if (ctx.cfg.output_format == "json")
    for (const auto& rep : r.reports) ctx.out << to_json(rep).dump() << "\n";
  ctx.emit({{"summary", to_json(r.summary)}});
}

void cmd_bounds(const Context& ctx, int n) {
  ctx.require_format({"json", "csv", "pretty"}, "bounds");
  const auto variants = height_bound_variants(n);
  const CountBounds cb = count_bounds(n);
  if (ctx.cfg.output_format == "csv") {
    ctx.out << ctx.csv_meta() << "n,quantity,log_value\n";
    for (const auto& v : variants)
      ctx.out << n << ",\"height_bound " << v.label << "\"," << csv_number(v.log_value) << "\n";
    ctx.out << n << ",log_lower," << csv_number(cb.log_lower) << "\n";
    ctx.out << n << ",log_upper," << csv_number(cb.log_upper) << "\n";
    return;
  }
  Json arr = Json::array();
  for (const auto& v : variants)
    arr.push_back({{"label", std::string(v.label)}, {"log_value", v.log_value},
                   {"value", std::exp(v.log_value)}});
  ctx.emit({{"n", n},
            {"height_bound", height_bound(n)},
            {"log_height_bound", log_height_bound(n)},
            {"variants", arr},
            {"count_bounds", {{"log_lower", cb.log_lower}, {"log_upper", cb.log_upper}}}});
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    config_error("syntax error at line " + std::to_string(line) + ", column " +
                 std::to_string(col));
  }
  if (!j.is_object()) config_error("config must be a flat JSON object");
  RunConfig cfg;
  for (const auto& [key, v] : j.items()) {
    if (key == "seed") {
      if (!v.is_number_unsigned()) config_error("seed must be a non-negative integer");
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "output_format") {
      if (!v.is_string()) config_error("output_format must be a string");
      cfg.output_format = v.get<std::string>();
      if (cfg.output_format != "json" && cfg.output_format != "csv" &&
          cfg.output_format != "pretty")
        config_error("output_format must be json, csv or pretty");
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(positive_integer(v, key));
    } else if (key == "recon_tol") {
      cfg.tolerances.recon_tol = positive_real(v, key);
    } else if (key == "ortho_tol") {
      cfg.tolerances.ortho_tol = positive_real(v, key);
    } else if (key == "det_tol") {
      cfg.tolerances.det_tol = positive_real(v, key);
    } else if (key == "singular_tol") {
      cfg.tolerances.singular_tol = positive_real(v, key);
    } else if (key == "cond_max") {
      cfg.tolerances.cond_max = positive_real(v, key);
    } else if (key == "max_iter") {
      cfg.max_iter = positive_integer(v, key);
    } else if (key == "witness_budget") {
      cfg.witness_budget = positive_integer(v, key);
    } else if (key == "mc_samples") {
      cfg.mc_samples = positive_integer(v, key);
    } else if (key == "height_cap") {
      cfg.height_cap = positive_integer(v, key);
    } else {
      config_error("unknown key '" + key + "'");
    }
  }
  return cfg;
}

RunConfig load_config(const std::optional<std::string>& path) {
  if (!path) return RunConfig{};
  std::ifstream f(*path);
  if (!f) config_error("cannot read config file " + *path);
  return parse_config(read_stream(f));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Siegel sets, Haar volumes and intersection enumeration for SL_n"};
  app.name("siegel");
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string config_path, format;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  auto add_globals = [&](CLI::App* a) {
    a->add_option("--config", config_path, "Flat JSON config file");
    a->add_option("--seed", seed, "Random seed (overrides SIEGEL_SEED and the config)");
    a->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    a->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  int n = 2;
  double t = SiegelParams::minimal().t, lambda = SiegelParams::minimal().lambda;
  auto add_params = [&](CLI::App* a) {
    a->add_option("--t", t, "Siegel parameter t")->check(CLI::PositiveNumber);
    a->add_option("--lambda", lambda, "Siegel parameter lambda")->check(CLI::PositiveNumber);
  };
  auto add_n = [&](CLI::App* a, bool required, int lo, int hi) {
    auto* o = a->add_option("--n", n, "Dimension")->check(CLI::Range(lo, hi));
    if (required) o->required();
  };

  MatrixInput matrix_in;
  double member_tol = 1e-9;
  auto* decompose_cmd = app.add_subcommand("decompose", "Iwasawa decomposition g = k a u");
  matrix_in.add_to(decompose_cmd);
  add_params(decompose_cmd);
  decompose_cmd->add_option("--tol", member_tol, "Membership tolerance")
      ->check(CLI::NonNegativeNumber);

  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce g into the minimal Siegel set");
  matrix_in.add_to(reduce_cmd);
  long max_iter_flag = 0;
  reduce_cmd->add_option("--max-iter", max_iter_flag, "Exchange budget")->check(CLI::PositiveNumber);

  std::string object;
  auto* volume_cmd = app.add_subcommand("volume", "Closed-form volumes, exact and numeric");
  volume_cmd->add_option("--object", object, "Which volume")
      ->required()
      ->check(CLI::IsMember({"so", "siegel", "quotient", "ratio", "symmetric", "harder",
                             "norm-ratio"}));
  add_n(volume_cmd, true, 1, 2000);
  add_params(volume_cmd);

  int n_max = 10;
  auto* growth_cmd = app.add_subcommand("growth-table", "Log-space growth of the volumes");
  growth_cmd->add_option("--n-max", n_max, "Largest n")->required()->check(CLI::Range(2, 2000));

  std::optional<double> b_min;
  long points = 0, samples_flag = 0;
  auto* sample_cmd = app.add_subcommand("sample", "Sample Siegel coordinates / Monte Carlo");
  add_n(sample_cmd, true, 2, 50);
  add_params(sample_cmd);
  sample_cmd->add_option("--b-min", b_min, "Lower cutoff for b (default t/16)")
      ->check(CLI::PositiveNumber);
  sample_cmd->add_option("--points", points, "Emit this many points instead of an estimate")
      ->check(CLI::PositiveNumber);
  sample_cmd->add_option("--samples", samples_flag, "Monte Carlo sample count")
      ->check(CLI::PositiveNumber);

  long budget_flag = 0, cap_flag = 0;
  auto* enum_cmd =
      app.add_subcommand("enumerate-intersections", "Search gamma with gamma Sigma meeting Sigma");
  add_n(enum_cmd, true, 2, 50);
  add_params(enum_cmd);
  enum_cmd->add_option("--budget", budget_flag, "Samples per candidate")->check(CLI::PositiveNumber);
  enum_cmd->add_option("--height-cap", cap_flag, "Largest |entry| enumerated")
      ->check(CLI::PositiveNumber);

  auto* bounds_cmd = app.add_subcommand("bounds", "Height bound variants and count bounds");
  add_n(bounds_cmd, true, 2, 2000);

  for (auto* sub : app.get_subcommands({})) add_globals(sub);
  add_globals(&app);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    CLI::App* target = &app;
    for (auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    CLI::App* target = &app;
    for (auto* sub : app.get_subcommands()) target = sub;
    err << "usage error: " << e.what() << "\n\n" << target->help();
    return 2;
  }

  try {
    Context ctx{load_config(config_path.empty() ? std::nullopt
                                                : std::optional<std::string>(config_path)),
                out};
    if (const char* env = std::getenv("SIEGEL_SEED")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0')
        throw Error(ErrorKind::MalformedConfig, "SIEGEL_SEED must be a non-negative integer");
      ctx.cfg.seed = v;
    }
    if (seed) ctx.cfg.seed = *seed;
    if (!format.empty()) ctx.cfg.output_format = format;
    if (threads) ctx.cfg.threads = *threads;
    if (max_iter_flag > 0) ctx.cfg.max_iter = max_iter_flag;
    if (samples_flag > 0) ctx.cfg.mc_samples = samples_flag;
    if (budget_flag > 0) ctx.cfg.witness_budget = budget_flag;
    if (cap_flag > 0) ctx.cfg.height_cap = cap_flag;
    const SiegelParams params{t, lambda};

    if (decompose_cmd->parsed()) cmd_decompose(ctx, matrix_in.read(), params, member_tol);
    if (reduce_cmd->parsed()) cmd_reduce(ctx, matrix_in.read());
    if (volume_cmd->parsed()) {
      if (n < 2 && object != "so")
        throw CLI::ValidationError("--n", "n must be >= 2 for " + object);
      cmd_volume(ctx, object, n, params);
    }
    if (growth_cmd->parsed()) cmd_growth(ctx, n_max);
    if (sample_cmd->parsed()) cmd_sample(ctx, n, params, b_min, points);
    if (enum_cmd->parsed()) cmd_enumerate(ctx, n, params);
    if (bounds_cmd->parsed()) cmd_bounds(ctx, n);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace siegel
