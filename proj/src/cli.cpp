#include "phasedisc/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "phasedisc/constructions.hpp"
#include "phasedisc/error.hpp"
#include "phasedisc/io.hpp"
#include "phasedisc/retrieval.hpp"

namespace phasedisc {

namespace {

const char* status_name(int code) {
  switch (code) {
    case kExitOk: return "ok";
    case kExitInconclusive: return "inconclusive";
    case kExitInvalidInput: return "invalid_input";
    default: return "numerical_failure";
  }
}

struct Outcome {
  int code = kExitOk;
  Json report = Json::object();
};

Outcome finish(int code, Json report) {
  report["status"] = status_name(code);
  return {code, std::move(report)};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

FunctionExpr load_function(const std::string& path) {
  return function_from_json(read_json_file(path), path);
}

BlaschkeProduct load_blaschke(const std::string& path) {
  const FunctionExpr f = load_function(path);
  const auto* b = std::get_if<BlaschkeProduct>(&f.node());
  if (b == nullptr) {
    throw Error(ErrorKind::InvalidArgument,
                path + ": certify needs a \"blaschke\" descriptor, got \"" +
                    std::string(f.type_name()) + "\"");
  }
  return *b;
}

Circle parse_circle_arg(std::string text) {
  if (text.rfind("circle:", 0) == 0) text.erase(0, 7);
  return parse_circle_triple(text);
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string c1, c2;
};

Outcome cmd_classify(const ClassifyArgs& a) {
  const Circle c1 = parse_circle_arg(a.c1);
  const Circle c2 = parse_circle_arg(a.c2);
  const CircleConfig cfg = classify_pair(c1, c2);
  Json report{{"command", "classify"}, {"c1", to_json(c1)}, {"c2", to_json(c2)}};
  report["variant"] = std::string(to_string(cfg.kind));
  report["angle"] = cfg.angle ? Json(*cfg.angle) : Json(nullptr);
  std::string verdict = "unique up to unimodular constant";
  if (cfg.angle) {
    const AngleClass cls = classify_angle(*cfg.angle);
    report["angle_class"] = to_json(cls);
    verdict = std::holds_alternative<RationalMultipleOfPi>(cls)
                  ? "non-unique (counterexamples exist)"
                  : "unique (under irrationality detection policy)";
  } else {
    report["angle_class"] = nullptr;
  }
  report["verdict"] = verdict;
  return finish(kExitOk, std::move(report));
}

struct RetrieveArgs {
  std::string boundary, inner, out;
  double r = 0.0;
  int degree_max = 8;
  double tol = 1e-7;
};

Outcome cmd_retrieve(const RetrieveArgs& a) {
  if (!(a.r > 0.0 && a.r < 1.0)) throw Error(ErrorKind::InvalidArgument, "--r must lie in (0, 1)");
  const ModulusData data_T = read_modulus_csv_file(a.boundary, 1.0, true);
  const ModulusData data_r = read_modulus_csv_file(a.inner, a.r, false);
  RetrievalConfig config;
  config.degree_max = a.degree_max;
  config.residual_tol = a.tol;
  const RetrievalResult res = retrieve_two_circles(data_T, data_r, config);

  const BoundaryModulus& bm = res.outer.boundary();
  Json outer{{"n", bm.size()}, {"phase", bm.phase()}, {"value_at_zero", res.outer.value_at_zero()}};
  Json report{{"command", "retrieve"},
              {"blaschke", to_json(res.blaschke)},
              {"residual_T", res.residual_T},
              {"residual_rT", res.residual_rT},
              {"degree", res.degree_used},
              {"certificate", to_json(res.certificate)}};
  if (!a.out.empty()) {
    std::filesystem::path csv(a.out);
    csv.replace_extension(".outer.csv");
    std::ostringstream rows;
    write_t_csv(rows, ModulusData{Circle{0.0, 1.0}, data_T.points, bm.values()});
    write_text(csv, rows.str());
    outer["csv"] = csv.filename().string();
    report["outer_boundary"] = outer;
    Json file = report;
    file["status"] = status_name(kExitOk);
    write_text(a.out, dump(file));
  } else {
    outer["values"] = bm.values();
    report["outer_boundary"] = outer;
  }
  return finish(kExitOk, std::move(report));
}

struct CertifyArgs {
  std::string f, g;
  double r = 0.0;
  int points = 0;
  double tol = 1e-10;
};

Outcome cmd_certify(const CertifyArgs& a) {
  const BlaschkeProduct b1 = load_blaschke(a.f);
  const BlaschkeProduct b2 = load_blaschke(a.g);
  if (!(a.r > 0.0 && a.r < 1.0)) throw Error(ErrorKind::InvalidArgument, "--r must lie in (0, 1)");
  const int bound = 2 * b1.degree() + 2 * b2.degree() - 1;
  if (a.points <= bound) {
    std::ostringstream msg;
    msg << "--points " << a.points << " cannot certify: equality at up to 2M + 2N - 1 = " << bound
        << " points is possible for distinct products, so at least " << bound + 1
        << " points are needed";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  std::vector<Complex> pts;
  for (int k = 0; k < a.points; ++k) pts.push_back(std::polar(a.r, 2.0 * kPi * k / a.points));
  const FinitePointCertificate cert = certify_finite_points(b1, b2, pts, a.tol);
  Json report = to_json(cert);
  report["command"] = "certify";
  return finish(cert.verdict == CertificateVerdict::EqualOnCircle ? kExitOk : kExitInconclusive,
                std::move(report));
}

struct VerifyArgs {
  std::string f, g, set;
  double tol = 1e-10;
};

Outcome cmd_verify(const VerifyArgs& a) {
  const FunctionExpr f = load_function(a.f);
  const FunctionExpr g = load_function(a.g);
  const PointSet set = parse_set_spec(a.set);
  const EqualModulusReport rep = verify_equal_modulus(f.as_function(), g.as_function(), set, a.tol);
  Json report = to_json(rep);
  report["command"] = "verify";
  report["set"] = a.set;
  report["tol"] = a.tol;
  return finish(rep.within_tolerance ? kExitOk : kExitInconclusive, std::move(report));
}

struct SampleArgs {
  std::string f, circle, out, format;
  int n = 0;
  double phase = 0.0;
};

Outcome cmd_sample(const SampleArgs& a, std::ostream& out, bool& report_written) {
  const FunctionExpr f = load_function(a.f);
  const Circle c = parse_circle_arg(a.circle);
  if (a.n < 1) throw Error(ErrorKind::InvalidArgument, "--n must be positive");
  const bool origin = c.center == Complex{};
  const std::string format = a.format.empty() ? (origin ? "t" : "points") : a.format;
  if (format != "t" && format != "points") {
    throw Error(ErrorKind::InvalidArgument, "--format must be 't' or 'points'");
  }
  if (format == "t" && !origin) {
    throw Error(ErrorKind::InvalidArgument, "the t,modulus format needs a circle centred at 0");
  }
  const ModulusSamples s = modulus_samples(f.as_function(), CircleGrid{c, a.n, a.phase});
  std::ostringstream csv;
  if (format == "t") {
    write_t_csv(csv, ModulusData{c, s.points, s.moduli});
  } else {
    write_points_csv(csv, s.points, s.moduli);
  }
  if (a.out.empty()) {
    out << csv.str();
    report_written = true;
    return {kExitOk, {}};
  }
  write_text(a.out, csv.str());
  return finish(kExitOk, Json{{"command", "sample"},
                              {"rows", a.n},
                              {"format", format},
                              {"circle", to_json(c)},
                              {"out", a.out}});
}

struct ExampleArgs {
  std::string name, out_dir;
  int samples = 512;
  int k = 3;
  double c1 = 2.0, c2 = 3.0;
};

constexpr double kSetTol = 1e-11;
constexpr double kWitnessMin = 1e-3;

Json check_pair(const CounterexamplePair& pair, bool& ok) {
  Json sets = Json::array();
  double worst = 0.0;
  for (const PointSet& set : pair.equal_modulus_set) {
    const EqualModulusReport rep =
        verify_equal_modulus(pair.f.as_function(), pair.g.as_function(), set, kSetTol);
    worst = std::max(worst, rep.max_deviation);
    sets.push_back(to_json(rep));
  }
  ok = worst <= kSetTol && pair.witness_deviation >= kWitnessMin;
  return {{"name", pair.name},
          {"sets", sets},
          {"max_deviation", worst},
          {"tolerance", kSetTol},
          {"witness", to_json(pair.witness)},
          {"witness_deviation", pair.witness_deviation}};
}

Outcome cmd_example(const ExampleArgs& a) {
  std::filesystem::path dir(a.out_dir.empty() ? "." : a.out_dir);
  std::filesystem::create_directories(dir);
  bool ok = true;
  Json report{{"command", "example"}, {"example", a.name}};
  std::optional<CounterexamplePair> pair;

  if (a.name == "perpendicular_lines") {
    pair = perpendicular_lines_pair(a.samples);
  } else if (a.name == "rational_angle") {
    pair = rational_angle_pair(a.k, a.c1, a.c2, a.samples);
  } else if (a.name == "finite_set") {
    pair = finite_set_pair({0.5, -0.5}, 0.3, BlaschkeProduct(1.0, {0.2}),
                           BlaschkeProduct(1.0, {0.6}), a.samples);
  } else if (a.name == "right_angle_circles") {
    const RightAnglePair rp = two_circle_right_angle_pair(a.c1, a.c2, a.samples);
    report["c1"] = to_json(rp.c1);
    report["c2"] = to_json(rp.c2);
    report["a"] = to_json(rp.a);
    report["base_angle"] = rp.base_angle;
    report["image_angle_between"] = rp.image_angle_between;
    pair = rp.pair;
  } else if (a.name == "strip_map") {
    const FunctionExpr strip = FunctionExpr::strip();
    const ComplexFunction one = [](Complex) { return Complex{1.0}; };
    Json sets = Json::array();
    double worst = 0.0;
    for (const PointSet& set : strip_unimodular_set(a.samples)) {
      const EqualModulusReport rep = verify_equal_modulus(strip.as_function(), one, set, kSetTol);
      worst = std::max(worst, rep.max_deviation);
      sets.push_back(to_json(rep));
    }
    ok = worst <= kSetTol;
    report["sets"] = sets;
    report["max_deviation"] = worst;
    report["tolerance"] = kSetTol;
    write_text(dir / "f.json", dump(to_json(strip)));
    report["files"] = {"f.json", "report.json"};
  } else if (a.name == "inverse_points") {
    const InversePointsReport rep = inverse_points_demo(a.samples);
    report["demo"] = to_json(rep);
    ok = rep.spread_on_c1 <= 1e-10 && rep.spread_on_c2 <= 1e-10 &&
         std::abs(rep.modulus_on_c1 - rep.modulus_on_c2) > 1e-2;
    report["files"] = {"report.json"};
  } else {
    throw Error(ErrorKind::InvalidArgument,
                "unknown example '" + a.name +
                    "'; expected perpendicular_lines, rational_angle, finite_set, "
                    "right_angle_circles, strip_map or inverse_points");
  }

  if (pair) {
    report["check"] = check_pair(*pair, ok);
    write_text(dir / "f.json", dump(to_json(pair->f)));
    write_text(dir / "g.json", dump(to_json(pair->g)));
    report["files"] = {"f.json", "g.json", "report.json"};
  }
  Outcome o = finish(ok ? kExitOk : kExitInconclusive, std::move(report));
  write_text(dir / "report.json", dump(o.report));
  return o;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase retrieval on the disc from modulus data on circles"};
  app.name("phasedisc");
  app.require_subcommand(1);

  ClassifyArgs classify;
  auto* sc = app.add_subcommand("classify", "classify a pair of circles and the uniqueness verdict");
  sc->add_option("--c1", classify.c1, "first circle cx,cy,r")->required();
  sc->add_option("--c2", classify.c2, "second circle cx,cy,r")->required();

  RetrieveArgs retrieve;
  auto* sr = app.add_subcommand("retrieve", "recover f from |f| on T and on rT");
  sr->add_option("--boundary", retrieve.boundary, "t,modulus CSV on the unit circle")->required();
  sr->add_option("--inner", retrieve.inner, "CSV on the circle of radius r")->required();
  sr->add_option("--r", retrieve.r, "inner radius")->required();
  sr->add_option("--degree-max", retrieve.degree_max, "largest Blaschke degree tried")
      ->capture_default_str();
  sr->add_option("--tol", retrieve.tol, "residual tolerance")->capture_default_str();
  sr->add_option("--out", retrieve.out, "also write the result JSON here");

  CertifyArgs certify;
  auto* sce = app.add_subcommand("certify", "finite-point uniqueness certificate for two products");
  sce->add_option("--f", certify.f, "Blaschke descriptor JSON")->required();
  sce->add_option("--g", certify.g, "Blaschke descriptor JSON")->required();
  sce->add_option("--r", certify.r, "circle radius")->required();
  sce->add_option("--points", certify.points, "number of equally spaced points")->required();
  sce->add_option("--tol", certify.tol, "agreement tolerance")->capture_default_str();

  VerifyArgs verify;
  auto* sv = app.add_subcommand("verify", "max ||f| - |g|| over a point set");
  sv->add_option("--f", verify.f, "descriptor JSON")->required();
  sv->add_option("--g", verify.g, "descriptor JSON")->required();
  sv->add_option("--set", verify.set, "circle:cx,cy,r[,n] | segment:x1,y1,x2,y2[,n] | file:path")
      ->required();
  sv->add_option("--tol", verify.tol, "tolerance")->capture_default_str();

  SampleArgs sample;
  auto* ss = app.add_subcommand("sample", "modulus samples of a descriptor on a circle");
  ss->add_option("--f", sample.f, "descriptor JSON")->required();
  ss->add_option("--circle", sample.circle, "cx,cy,r or circle:cx,cy,r")->required();
  ss->add_option("--n", sample.n, "number of points")->required();
  ss->add_option("--phase", sample.phase, "angle of the first point")->capture_default_str();
  ss->add_option("--format", sample.format, "t or points (default: t for circles at 0)");
  ss->add_option("--out", sample.out, "CSV path (default: stdout)");

  ExampleArgs example;
  auto* se = app.add_subcommand("example", "write an example pair and its verification report");
  se->add_option("name", example.name,
                 "perpendicular_lines | rational_angle | finite_set | right_angle_circles | "
                 "strip_map | inverse_points")
      ->required();
  se->add_option("--out-dir", example.out_dir, "output directory")->capture_default_str();
  se->add_option("--samples", example.samples, "samples per set")->capture_default_str();
  se->add_option("--k", example.k, "power for rational_angle")->capture_default_str();
  se->add_option("--c1", example.c1, "first level")->capture_default_str();
  se->add_option("--c2", example.c2, "second level")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "phasedisc: " << e.what() << "\n";
    out << dump(Json{{"status", status_name(kExitInvalidInput)},
                     {"error", {{"kind", "ParseError"}, {"message", e.what()}}}});
    return kExitInvalidInput;
  }

  Outcome outcome;
  bool report_written = false;
  try {
    if (*sc) outcome = cmd_classify(classify);
    else if (*sr) outcome = cmd_retrieve(retrieve);
    else if (*sce) outcome = cmd_certify(certify);
    else if (*sv) outcome = cmd_verify(verify);
    else if (*ss) outcome = cmd_sample(sample, out, report_written);
    else outcome = cmd_example(example);
  } catch (const Error& e) {
    const int code = is_input_error(e.kind()) ? kExitInvalidInput : kExitNumericalFailure;
    err << "phasedisc: " << e.what() << "\n";
    Json error{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    error["stage"] = e.stage().empty() ? Json(nullptr) : Json(e.stage());
    outcome = finish(code, Json{{"error", error}});
  } catch (const std::exception& e) {
    err << "phasedisc: " << e.what() << "\n";
    outcome = finish(kExitNumericalFailure,
                     Json{{"error", {{"kind", "InternalCheckFailed"}, {"message", e.what()}}}});
  }
  if (!report_written) out << dump(outcome.report);
  return outcome.code;
}

}  // namespace phasedisc
