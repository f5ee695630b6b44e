#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include "specdiff/error.hpp"
#include "specdiff/experiments.hpp"
#include "specdiff/quadrature.hpp"
#include "specdiff/report.hpp"
#include "specdiff/spectral.hpp"
#include "specdiff/theory.hpp"

namespace specdiff::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string kind = "abs";
  std::string xi = "0";
  std::string sigma;
  std::string g = "1";
  std::string method = "jacobi";
  std::string alpha = "0";
  std::string beta = "0";
  int m = 0;
  int n = -1;
  int n_min = 32;
  int n_max = 1024;
  std::vector<std::string> points;
  std::string tol = "0.3";
  int figure = 0;
  std::string side = "right";
  bool interior = false;
  std::string format = "csv";
  std::string out;
};

struct Output {
  CsvTable table;
  json doc;
  bool converged = true;
  bool failed = false;
};

double parse_plain(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || !std::isfinite(v)) throw ValidationError("not a number: '" + s + "'");
  return v;
}

SingularFunction make_function(const Options& o) {
  if (o.sigma.empty()) throw ValidationError("--sigma is required");
  const double xi = parse_number(o.xi);
  const double sigma = parse_number(o.sigma);
  const SmoothFactor g = parse_smooth_factor(o.g);
  if (o.kind == "abs") return SingularFunction::abs_power(xi, sigma, g);
  if (o.kind == "trunc") return SingularFunction::trunc_power(xi, sigma, g);
  throw ValidationError("--kind must be 'abs' or 'trunc' (got '" + o.kind + "')");
}

JacobiParams make_params(const Options& o) { return JacobiParams(parse_number(o.alpha), parse_number(o.beta)); }

Method make_method(const Options& o) {
  if (o.method == "jacobi") return JacobiProjection{make_params(o)};
  if (o.method == "cheb-interp") return ChebyshevInterpolation{};
  throw ValidationError("--method must be 'jacobi' or 'cheb-interp' (got '" + o.method + "')");
}

std::vector<double> make_points(const Options& o, const SingularFunction& f) {
  if (o.points.empty()) throw ValidationError("at least one --point is required");
  std::vector<double> xs;
  for (std::string p : o.points) {
    if (p.rfind("x=", 0) == 0) p = p.substr(2);
    const double x = p == "xi" ? f.xi() : parse_number(p);
    if (!(x >= -1.0 && x <= 1.0)) throw ValidationError("point must lie in [-1, 1] (got '" + p + "')");
    xs.push_back(x);
  }
  return xs;
}

int require_n(const Options& o, int min_value) {
  if (o.n < min_value) throw ValidationError("--n must be >= " + std::to_string(min_value));
  return o.n;
}

json function_json(const SingularFunction& f) {
  return {{"kind", f.kind() == SingularKind::AbsPower ? "abs" : "trunc"},
          {"xi", f.xi()},
          {"sigma", f.sigma()},
          {"g", f.g().describe()}};
}

json method_json(const Method& method) {
  if (const auto* j = std::get_if<JacobiProjection>(&method)) {
    return {{"kind", "jacobi"}, {"alpha", j->params.alpha()}, {"beta", j->params.beta()}};
  }
  return {{"kind", "cheb-interp"}};
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Output coefficient_output(const std::string& kind, const std::vector<double>& c, json doc) {
  Output out;
  out.table.kind = kind;
  out.table.columns = {"k", "coeff"};
  for (std::size_t k = 0; k < c.size(); ++k) out.table.rows.push_back({std::to_string(k), format_double(c[k])});
  doc["schema"] = kSchemaVersion;
  doc["kind"] = kind;
  doc["coefficients"] = c;
  out.doc = std::move(doc);
  return out;
}

Output cmd_coeffs(const Options& o) {
  const auto f = make_function(o);
  const auto p = make_params(o);
  const int n = require_n(o, 0);
  CoefficientDiagnostics diag;
  const auto e = coefficients_batch(f, p, n, &diag);
  const std::vector<double> c(e.coeffs().begin(), e.coeffs().end());
  auto out = coefficient_output("coeffs", c, {{"function", function_json(f)},
                                              {"method", method_json(JacobiProjection{p})},
                                              {"n", n},
                                              {"converged", diag.converged}});
  out.table.columns = {"k", "a_k"};
  out.converged = diag.converged;
  return out;
}

Output cmd_project(const Options& o) {
  const auto f = make_function(o);
  const auto p = make_params(o);
  const int n = require_n(o, 0);
  if (o.m < 0) throw ValidationError("--m must be >= 0");
  CoefficientDiagnostics diag;
  const auto e = derivative_ladder(coefficients_batch(f, p, n, &diag), o.m);
  const std::vector<double> c(e.coeffs().begin(), e.coeffs().end());
  auto out = coefficient_output("project", c, {{"function", function_json(f)},
                                               {"method", method_json(JacobiProjection{p})},
                                               {"n", n},
                                               {"m", o.m},
                                               {"family", {{"alpha", e.params().alpha()}, {"beta", e.params().beta()}}},
                                               {"converged", diag.converged}});
  out.converged = diag.converged;
  return out;
}

Output cmd_interp(const Options& o) {
  const auto f = make_function(o);
  const int n = require_n(o, 1);
  if (o.m < 0) throw ValidationError("--m must be >= 0");
  const auto e = cheb_interpolant(f, n);
  std::vector<double> c(e.coeffs().begin(), e.coeffs().end());
  for (int i = 0; i < o.m; ++i) c = cheb_series_derivative(c);
  return coefficient_output("interp", c,
                            {{"function", function_json(f)}, {"method", method_json(ChebyshevInterpolation{})},
                             {"n", n}, {"m", o.m}});
}

Output cmd_errcurve(const Options& o) {
  const auto f = make_function(o);
  const auto method = make_method(o);
  const auto xs = make_points(o, f);
  const auto n_list = default_n_grid(o.n_min, o.n_max);
  CoefficientDiagnostics diag;
  const auto curves = error_curves(f, method, o.m, xs, n_list, &diag);
  Output out;
  out.table = parse_csv(curves_csv(curves));
  json series = json::array();
  for (const auto& c : curves) {
    json samples = json::array();
    for (const auto& s : c.samples) samples.push_back({{"n", s.n}, {"err", s.err}});
    series.push_back({{"config", hash_hex(c.config.hash())}, {"x", c.config.x}, {"samples", samples}});
  }
  out.doc = {{"schema", kSchemaVersion}, {"kind", "errcurve"},          {"function", function_json(f)},
             {"method", method_json(method)}, {"m", o.m}, {"converged", diag.converged},
             {"series", series}};
  out.converged = diag.converged;
  return out;
}

Output cmd_rates(const Options& o) {
  const double tol = parse_number(o.tol);
  if (!(tol > 0.0)) throw ValidationError("--tol must be positive");
  std::optional<Suite> suite;
  if (o.figure != 0) {
    suite = figure_suite(o.figure, o.m);
  } else {
    const auto f = make_function(o);
    suite = Suite{f, make_method(o), make_points(o, f), NRange{o.n_min, o.n_max}};
  }
  CoefficientDiagnostics diag;
  const auto report =
      verify_prediction(suite->f, suite->method, o.m, suite->points, suite->range, tol, VerifyOptions{}, &diag);
  Output out;
  out.doc = json::parse(verification_json(report, suite->f, suite->method, o.m));
  out.doc["kind"] = "rates";
  out.doc["converged"] = diag.converged;
  out.table.kind = "rates";
  out.table.columns = {"x", "class", "predicted", "slope", "difference", "pass"};
  for (const auto& p : report.points) {
    out.table.rows.push_back({format_double(p.x), std::string(to_string(p.point_class)), format_double(p.predicted),
                              p.fit ? format_double(p.fit->slope) : "nan", format_double(p.difference),
                              p.pass ? "true" : "false"});
  }
  if (!report.assumptions_ok) out.table.comments.push_back("violation " + report.violation);
  if (report.argmax) {
    std::string pred;
    for (auto pc : report.argmax->predicted) pred += (pred.empty() ? "" : "|") + std::string(to_string(pc));
    out.table.comments.push_back("argmax measured=" + std::string(to_string(report.argmax->measured_class)) +
                                 " predicted=" + pred + " pass=" + (report.argmax->pass ? "true" : "false"));
  }
  out.converged = diag.converged;
  out.failed = !report.pass;
  return out;
}

Output cmd_predict(const Options& o) {
  const auto f = make_function(o);
  const auto method = make_method(o);
  if (o.m < 0) throw ValidationError("--m must be >= 0");
  if (auto chk = assumption_check(f, method, o.m); !chk) {
    throw ValidationError("assumption violated: " + chk.violation);
  }
  const auto xs = make_points(o, f);
  Output out;
  out.table.kind = "predict";
  out.table.columns = {"x", "class", "kappa", "amplitude"};
  json points = json::array();
  for (double x : xs) {
    const auto pc = classify_point(f, x);
    const auto rp = rate_prediction(f, method, o.m, x);
    out.table.rows.push_back({format_double(x), std::string(to_string(pc)), format_double(rp.kappa),
                              rp.amplitude ? format_double(*rp.amplitude) : ""});
    json e = {{"x", x}, {"class", std::string(to_string(pc))}, {"kappa", finite_or_null(rp.kappa)}};
    if (std::isinf(rp.kappa)) e["vanishes"] = true;
    if (rp.amplitude) e["amplitude"] = *rp.amplitude;
    points.push_back(std::move(e));
  }
  const auto mx = max_norm_prediction(f, method, o.m);
  json argmax = json::array();
  std::string classes;
  for (auto pc : mx.argmax) {
    argmax.push_back(std::string(to_string(pc)));
    classes += (classes.empty() ? "" : "|") + std::string(to_string(pc));
  }
  out.table.comments.push_back("max_norm kappa=" + format_double(mx.kappa) + " argmax=" + classes +
                               (mx.tie() ? " tie" : ""));
  out.doc = {{"schema", kSchemaVersion},
             {"kind", "predict"},
             {"function", function_json(f)},
             {"method", method_json(method)},
             {"m", o.m},
             {"points", points},
             {"max_norm", {{"kappa", finite_or_null(mx.kappa)}, {"argmax", argmax}, {"tie", mx.tie()}}}};
  return out;
}

Output cmd_superconv(const Options& o) {
  const auto p = make_params(o);
  const int n = require_n(o, 1);
  if (o.m < 0) throw ValidationError("--m must be >= 0");
  Output out;
  out.table.kind = "superconv";
  out.table.columns = {"j", "theta", "x"};
  json rows = json::array();
  json doc = {{"schema", kSchemaVersion}, {"kind", "superconv"}, {"alpha", p.alpha()}, {"beta", p.beta()},
              {"m", o.m},                 {"n", n}};
  if (o.interior) {
    const auto f = make_function(o);
    const auto roots = superconv_roots_interior(f, p, o.m, n);
    for (std::size_t j = 0; j < roots.size(); ++j) {
      out.table.rows.push_back({std::to_string(j), format_double(roots[j].theta), format_double(roots[j].x)});
      rows.push_back({{"j", j}, {"theta", roots[j].theta}, {"x", roots[j].x}, {"residual", roots[j].residual}});
    }
    doc["function"] = function_json(f);
    doc["side"] = "interior";
  } else {
    Side side;
    if (o.side == "right") {
      side = Side::Right;
    } else if (o.side == "left") {
      side = Side::Left;
    } else {
      throw ValidationError("--side must be 'left' or 'right' (got '" + o.side + "')");
    }
    for (const auto& pt : superconv_points(p, o.m, n, side)) {
      out.table.rows.push_back({std::to_string(pt.j), format_double(pt.theta), format_double(pt.x)});
      rows.push_back({{"j", pt.j}, {"theta", pt.theta}, {"x", pt.x}});
    }
    doc["side"] = o.side;
  }
  doc["points"] = std::move(rows);
  out.doc = std::move(doc);
  return out;
}

Output cmd_lebesgue(const Options& o) {
  const auto f = make_function(o);
  const auto p = make_params(o);
  const auto c = lebesgue_comparison(f, p);
  Output out;
  out.table.kind = "lebesgue";
  out.table.columns = {"quantity", "value", "rational"};
  const std::pair<const char*, double> items[] = {{"best_exponent", c.best_exponent},
                                                  {"lebesgue_growth", c.lebesgue_growth},
                                                  {"lebesgue_exponent", c.lebesgue_exponent},
                                                  {"actual_exponent", c.actual_exponent}};
  json doc = {{"schema", kSchemaVersion}, {"kind", "lebesgue"}, {"function", function_json(f)},
              {"method", method_json(JacobiProjection{p})}, {"log_growth", c.log_growth}};
  for (const auto& [name, v] : items) {
    out.table.rows.push_back({name, format_double(v), to_rational_string(v)});
    doc[name] = {{"value", v}, {"rational", to_rational_string(v)}};
  }
  out.table.comments.push_back(std::string("log_growth=") + (c.log_growth ? "true" : "false"));
  out.doc = std::move(doc);
  return out;
}

Output cmd_figure(int id, const Options&) {
  CoefficientDiagnostics diag;
  const auto ds = figure_data(id, &diag);
  Output out;
  out.table = parse_csv(dataset_csv(ds));
  out.doc = json::parse(dataset_json(ds));
  out.converged = diag.converged;
  return out;
}

void add_function_options(CLI::App* sub, Options& o) {
  sub->add_option("--kind", o.kind, "abs or trunc")->capture_default_str();
  sub->add_option("--xi", o.xi, "singularity location in [-1, 1]")->capture_default_str();
  sub->add_option("--sigma", o.sigma, "singularity exponent");
  sub->add_option("--g", o.g, "smooth factor: 1, exp or cheb:[c0,c1,...]")->capture_default_str();
}

void add_params_options(CLI::App* sub, Options& o) {
  sub->add_option("--alpha", o.alpha, "Jacobi alpha")->capture_default_str();
  sub->add_option("--beta", o.beta, "Jacobi beta")->capture_default_str();
}

void add_method_options(CLI::App* sub, Options& o) {
  sub->add_option("--method", o.method, "jacobi or cheb-interp")->capture_default_str();
  add_params_options(sub, o);
}

void add_output_options(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out, "output path (stdout when omitted)");
}

}  // namespace

double parse_number(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_plain(text);
  const double num = parse_plain(text.substr(0, slash));
  const double den = parse_plain(text.substr(slash + 1));
  if (den == 0.0) throw ValidationError("zero denominator in '" + text + "'");
  return num / den;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  int figure_id = 0;
  CLI::App app{"Spectral differentiation of functions with algebraic singularities", "specdiff"};
  app.require_subcommand(1);

  auto* coeffs = app.add_subcommand("coeffs", "Jacobi coefficients a_0..a_n");
  add_function_options(coeffs, o);
  add_params_options(coeffs, o);
  coeffs->add_option("--n", o.n, "highest index")->required();
  add_output_options(coeffs, o);

  auto* project = app.add_subcommand("project", "Jacobi projection of degree n, differentiated m times");
  add_function_options(project, o);
  add_params_options(project, o);
  project->add_option("--n", o.n, "degree")->required();
  project->add_option("--m", o.m, "derivative order")->capture_default_str();
  add_output_options(project, o);

  auto* interp = app.add_subcommand("interp", "Chebyshev-Lobatto interpolant of degree n");
  add_function_options(interp, o);
  interp->add_option("--n", o.n, "degree")->required();
  interp->add_option("--m", o.m, "derivative order")->capture_default_str();
  add_output_options(interp, o);

  auto* errcurve = app.add_subcommand("errcurve", "pointwise remainder |R_n^m(x)| over a degree grid");
  add_function_options(errcurve, o);
  add_method_options(errcurve, o);
  errcurve->add_option("--m", o.m, "derivative order")->capture_default_str();
  errcurve->add_option("--point", o.points, "evaluation point (x=V, V or xi)")->required();
  errcurve->add_option("--n-min", o.n_min, "smallest degree")->capture_default_str();
  errcurve->add_option("--n-max", o.n_max, "largest degree")->capture_default_str();
  add_output_options(errcurve, o);

  auto* rates = app.add_subcommand("rates", "fit measured decay rates and compare with predictions");
  add_function_options(rates, o);
  add_method_options(rates, o);
  rates->add_option("--figure", o.figure, "use the rate suite of figure 2, 3 or 4");
  rates->add_option("--m", o.m, "derivative order")->capture_default_str();
  rates->add_option("--point", o.points, "evaluation point (x=V, V or xi)");
  rates->add_option("--n-min", o.n_min, "smallest degree")->capture_default_str();
  rates->add_option("--n-max", o.n_max, "largest degree")->capture_default_str();
  rates->add_option("--tol", o.tol, "slope tolerance")->capture_default_str();
  add_output_options(rates, o);

  auto* predict = app.add_subcommand("predict", "predicted pointwise and max-norm exponents");
  add_function_options(predict, o);
  add_method_options(predict, o);
  predict->add_option("--m", o.m, "derivative order")->capture_default_str();
  predict->add_option("--point", o.points, "evaluation point (x=V, V or xi)")->required();
  add_output_options(predict, o);

  auto* superconv = app.add_subcommand("superconv", "superconvergence points");
  add_function_options(superconv, o);
  add_params_options(superconv, o);
  superconv->add_option("--m", o.m, "derivative order")->capture_default_str();
  superconv->add_option("--n", o.n, "degree")->required();
  superconv->add_option("--side", o.side, "left or right endpoint singularity")->capture_default_str();
  superconv->add_flag("--interior", o.interior, "roots for an interior singularity");
  add_output_options(superconv, o);

  auto* lebesgue = app.add_subcommand("lebesgue", "Lebesgue-lemma exponent versus the sharp exponent");
  add_function_options(lebesgue, o);
  add_params_options(lebesgue, o);
  add_output_options(lebesgue, o);

  auto* figure = app.add_subcommand("figure", "dataset behind a figure");
  figure->add_option("id", figure_id, "figure id 1-5")->required();
  add_output_options(figure, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInvalid;
  }

  try {
    Output result;
    if (coeffs->parsed()) result = cmd_coeffs(o);
    if (project->parsed()) result = cmd_project(o);
    if (interp->parsed()) result = cmd_interp(o);
    if (errcurve->parsed()) result = cmd_errcurve(o);
    if (rates->parsed()) result = cmd_rates(o);
    if (predict->parsed()) result = cmd_predict(o);
    if (superconv->parsed()) result = cmd_superconv(o);
    if (lebesgue->parsed()) result = cmd_lebesgue(o);
    if (figure->parsed()) result = cmd_figure(figure_id, o);

    const std::string text = o.format == "json" ? format_json(result.doc.dump()) : write_csv(result.table);
    if (o.out.empty()) {
      out << text;
    } else {
      write_file_atomic(o.out, text);
    }
    if (!result.converged) {
      err << "error: coefficient quadrature did not converge\n";
      return kExitNonConvergence;
    }
    if (result.failed) {
      err << "verification failed\n";
      return kExitInvalid;
    }
    return kExitOk;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace specdiff::cli
