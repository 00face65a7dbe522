#include "phasedisc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "phasedisc/error.hpp"

namespace phasedisc {

namespace {

[[noreturn]] void parse_fail(std::string_view path, const std::string& what) {
  throw Error(ErrorKind::ParseError, std::string(path) + ": " + what);
}

std::string child(std::string_view path, std::string_view key) {
  return std::string(path) + "." + std::string(key);
}

std::string child(std::string_view path, std::size_t index) {
  return std::string(path) + "[" + std::to_string(index) + "]";
}

const Json& member(const Json& j, std::string_view path, const char* key) {
  if (!j.is_object()) parse_fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

double number_from_json(const Json& j, std::string_view path) {
  if (!j.is_number()) parse_fail(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) parse_fail(path, "number is not finite");
  return x;
}

std::vector<Complex> complex_list(const Json& j, std::string_view path) {
  if (!j.is_array()) parse_fail(path, "expected an array");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_from_json(j[i], child(path, i)));
  return out;
}

Polynomial poly_from_json(const Json& j, std::string_view path) {
  return Polynomial(complex_list(j, path));
}

MoebiusMap moebius_from_json(const Json& j, std::string_view path) {
  try {
    return MoebiusMap(complex_from_json(member(j, path, "a"), child(path, "a")),
                      complex_from_json(member(j, path, "b"), child(path, "b")),
                      complex_from_json(member(j, path, "c"), child(path, "c")),
                      complex_from_json(member(j, path, "d"), child(path, "d")));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    parse_fail(path, e.what());
  }
}

RationalFunction rational_from_json(const Json& j, std::string_view path) {
  return RationalFunction(poly_from_json(member(j, path, "num"), child(path, "num")),
                          poly_from_json(member(j, path, "den"), child(path, "den")));
}

Json rational_body(const RationalFunction& r) {
  return {{"num", to_json(r.numerator())}, {"den", to_json(r.denominator())}};
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::optional<double> to_double(std::string_view s) {
  double x = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(x)) return std::nullopt;
  return x;
}

std::vector<double> number_fields(std::string_view text, std::size_t min_count,
                                  std::size_t max_count, const std::string& where) {
  const auto fields = split(text, ',');
  if (fields.size() < min_count || fields.size() > max_count) {
    std::ostringstream msg;
    msg << where << ": expected " << min_count;
    if (max_count != min_count) msg << " to " << max_count;
    msg << " comma-separated numbers, got " << fields.size();
    throw Error(ErrorKind::ParseError, msg.str());
  }
  std::vector<double> out;
  for (const std::string_view f : fields) {
    const auto x = to_double(f);
    if (!x) throw Error(ErrorKind::ParseError, where + ": not a finite number: '" + std::string(f) + "'");
    out.push_back(*x);
  }
  return out;
}

struct CsvTable {
  std::vector<std::string_view> header;
  std::vector<std::pair<int, std::vector<double>>> rows;  // (line number, values)
  std::vector<std::string> storage;
};

CsvTable read_table(std::istream& in, std::string_view source) {
  CsvTable t;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  std::string header_line;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view v = trim(line);
    if (v.empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(lineno);
    if (!have_header) {
      header_line = std::string(v);
      have_header = true;
      continue;
    }
    const std::size_t ncol = split(header_line, ',').size();
    t.rows.emplace_back(lineno, number_fields(v, ncol, ncol, where));
  }
  if (!have_header) throw Error(ErrorKind::ParseError, std::string(source) + ": empty file");
  t.storage.push_back(std::move(header_line));
  t.header = split(t.storage.back(), ',');
  return t;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Circle& c) {
  return {{"cx", c.center.real()}, {"cy", c.center.imag()}, {"r", c.radius}};
}

Json to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const Complex c : p.coeffs()) out.push_back(to_json(c));
  return out;
}

Json to_json(const MoebiusMap& m) {
  return {{"a", to_json(m.a())}, {"b", to_json(m.b())}, {"c", to_json(m.c())}, {"d", to_json(m.d())}};
}

Json to_json(const BlaschkeProduct& b) {
  Json zeros = Json::array();
  for (const Complex a : b.zeros()) zeros.push_back(to_json(a));
  return {{"type", "blaschke"}, {"constant", to_json(b.constant())}, {"zeros", zeros}};
}

Json to_json(const FunctionExpr& f) {
  return std::visit(
      Overloaded{
          [](const BlaschkeProduct& b) { return to_json(b); },
          [](const RationalFunction& r) {
            Json j = rational_body(r);
            j["type"] = "rational";
            return j;
          },
          [](const MoebiusOf& m) {
            return Json{{"type", "moebius_of"}, {"map", to_json(m.map)}, {"inner", to_json(*m.inner)}};
          },
          [](const PowerComposite& p) {
            return Json{{"type", "power_composite"},
                        {"k", p.k},
                        {"outer", rational_body(p.outer)},
                        {"pre", to_json(p.pre)}};
          },
          [](const StripMap&) { return Json{{"type", "strip"}}; },
          [](const ProductOf& p) {
            Json factors = Json::array();
            for (const FunctionExpr& f : p.factors) factors.push_back(to_json(f));
            return Json{{"type", "product"}, {"factors", factors}};
          },
      },
      f.node());
}

Complex complex_from_json(const Json& j, std::string_view path) {
  if (j.is_number()) return number_from_json(j, path);
  if (!j.is_array() || j.size() != 2) parse_fail(path, "expected a number or [re, im]");
  return {number_from_json(j[0], child(path, 0)), number_from_json(j[1], child(path, 1))};
}

Circle circle_from_json(const Json& j, std::string_view path) {
  const double cx = number_from_json(member(j, path, "cx"), child(path, "cx"));
  const double cy = number_from_json(member(j, path, "cy"), child(path, "cy"));
  const double r = number_from_json(member(j, path, "r"), child(path, "r"));
  if (!(r > 0.0)) parse_fail(child(path, "r"), "radius must be positive");
  return Circle{{cx, cy}, r};
}

FunctionExpr function_from_json(const Json& j, std::string_view path) {
  const Json& type = member(j, path, "type");
  if (!type.is_string()) parse_fail(child(path, "type"), "expected a string");
  const std::string t = type.get<std::string>();
  try {
    if (t == "blaschke") {
      return FunctionExpr::blaschke(
          BlaschkeProduct(complex_from_json(member(j, path, "constant"), child(path, "constant")),
                          complex_list(member(j, path, "zeros"), child(path, "zeros"))));
    }
    if (t == "rational") return FunctionExpr::rational(rational_from_json(j, path));
    if (t == "moebius_of") {
      return FunctionExpr::moebius_of(
          moebius_from_json(member(j, path, "map"), child(path, "map")),
          function_from_json(member(j, path, "inner"), child(path, "inner")));
    }
    if (t == "power_composite") {
      const Json& k = member(j, path, "k");
      if (!k.is_number_integer()) parse_fail(child(path, "k"), "expected an integer");
      MoebiusMap pre = MoebiusMap::identity();
      if (j.contains("pre")) pre = moebius_from_json(j["pre"], child(path, "pre"));
      return FunctionExpr::power_composite(
          k.get<int>(), rational_from_json(member(j, path, "outer"), child(path, "outer")), pre);
    }
    if (t == "strip") return FunctionExpr::strip();
    if (t == "product") {
      const Json& fs = member(j, path, "factors");
      if (!fs.is_array()) parse_fail(child(path, "factors"), "expected an array");
      std::vector<FunctionExpr> factors;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        factors.push_back(function_from_json(fs[i], child(child(path, "factors"), i)));
      }
      return FunctionExpr::product(std::move(factors));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    parse_fail(path, e.what());
  }
  parse_fail(child(path, "type"), "unknown function type \"" + t + "\"");
}

Circle parse_circle_triple(std::string_view text) {
  const auto v = number_fields(text, 3, 3, "circle '" + std::string(text) + "'");
  if (!(v[2] > 0.0)) throw Error(ErrorKind::ParseError, "circle radius must be positive");
  return Circle{{v[0], v[1]}, v[2]};
}

PointSet parse_set_spec(std::string_view spec, int default_n) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorKind::ParseError,
                "set spec '" + std::string(spec) + "' must be circle:..., segment:... or file:...");
  }
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view rest = spec.substr(colon + 1);
  const std::string where = "set spec '" + std::string(spec) + "'";
  auto count = [&](double x) {
    if (x != std::floor(x) || x < 2 || x > 1e7) {
      throw Error(ErrorKind::ParseError, where + ": point count must be an integer >= 2");
    }
    return static_cast<int>(x);
  };
  if (kind == "circle") {
    const auto v = number_fields(rest, 3, 4, where);
    if (!(v[2] > 0.0)) throw Error(ErrorKind::ParseError, where + ": radius must be positive");
    return CircleGrid{Circle{{v[0], v[1]}, v[2]}, v.size() == 4 ? count(v[3]) : default_n, 0.0};
  }
  if (kind == "segment") {
    const auto v = number_fields(rest, 4, 5, where);
    return LineSegmentGrid{{v[0], v[1]}, {v[2], v[3]}, v.size() == 5 ? count(v[4]) : default_n};
  }
  if (kind == "file") {
    std::ifstream in{std::string(rest)};
    if (!in) throw Error(ErrorKind::ParseError, where + ": cannot open file");
    return ExplicitPoints{read_points_csv(in, rest)};
  }
  throw Error(ErrorKind::ParseError, where + ": unknown set kind '" + std::string(kind) + "'");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

void write_t_csv(std::ostream& out, const ModulusData& data) {
  out << "t,modulus\n";
  for (std::size_t k = 0; k < data.points.size(); ++k) {
    double t = std::arg(data.points[k]);
    if (t < 0.0) t += 2.0 * kPi;
    out << format_double(t) << ',' << format_double(data.moduli[k]) << '\n';
  }
}

void write_points_csv(std::ostream& out, const std::vector<Complex>& points,
                      const std::vector<double>& moduli) {
  out << "index,re,im,modulus\n";
  for (std::size_t k = 0; k < points.size(); ++k) {
    out << k << ',' << format_double(points[k].real()) << ',' << format_double(points[k].imag())
        << ',' << format_double(moduli[k]) << '\n';
  }
}

ModulusData read_modulus_csv(std::istream& in, double radius, bool require_uniform,
                             std::string_view source) {
  const CsvTable table = read_table(in, source);
  if (table.rows.empty()) throw Error(ErrorKind::ParseError, std::string(source) + ": no data rows");
  std::vector<Complex> points;
  std::vector<double> moduli;
  auto where = [&](int line) { return std::string(source) + ":" + std::to_string(line); };

  const bool t_format = table.header == std::vector<std::string_view>{"t", "modulus"};
  const bool p_format = table.header == std::vector<std::string_view>{"index", "re", "im", "modulus"};
  if (!t_format && !p_format) {
    throw Error(ErrorKind::ParseError,
                where(1) + ": header must be 't,modulus' or 'index,re,im,modulus'");
  }
  const double n = static_cast<double>(table.rows.size());
  const double t0 = t_format ? table.rows.front().second[0] : 0.0;
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const auto& [line, v] = table.rows[k];
    const double m = v.back();
    if (m < 0.0) throw Error(ErrorKind::ParseError, where(line) + ": negative modulus");
    if (t_format) {
      if (require_uniform &&
          std::abs(v[0] - (t0 + 2.0 * kPi * static_cast<double>(k) / n)) > 1e-12) {
        std::ostringstream msg;
        msg << where(line) << ": t = " << format_double(v[0]) << " is not on the uniform grid of "
            << table.rows.size() << " points (grid size and spacing disagree)";
        throw Error(ErrorKind::ParseError, msg.str());
      }
      points.push_back(std::polar(radius, v[0]));
    } else {
      if (v[0] != static_cast<double>(k)) {
        throw Error(ErrorKind::ParseError, where(line) + ": index column must count 0, 1, 2, ...");
      }
      points.emplace_back(v[1], v[2]);
    }
    moduli.push_back(m);
  }
  if (p_format && require_uniform) {
    for (std::size_t k = 0; k < points.size(); ++k) {
      const Complex expected =
          std::polar(radius, std::arg(points.front()) + 2.0 * kPi * static_cast<double>(k) / n);
      if (std::abs(points[k] - expected) > 1e-10) {
        throw Error(ErrorKind::ParseError, where(table.rows[k].first) +
                                               ": points do not form an ordered uniform grid");
      }
    }
  }
  try {
    return make_modulus_data(Circle{0.0, radius}, std::move(points), std::move(moduli));
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, std::string(source) + ": " + e.what());
  }
}

ModulusData read_modulus_csv_file(const std::string& path, double radius, bool require_uniform) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open file");
  return read_modulus_csv(in, radius, require_uniform, path);
}

std::vector<Complex> read_points_csv(std::istream& in, std::string_view source) {
  const CsvTable table = read_table(in, source);
  const bool ok = table.header.size() >= 3 && table.header[0] == "index" && table.header[1] == "re" &&
                  table.header[2] == "im" &&
                  (table.header.size() == 3 ||
                   (table.header.size() == 4 && table.header[3] == "modulus"));
  if (!ok) {
    throw Error(ErrorKind::ParseError,
                std::string(source) + ": header must be 'index,re,im' or 'index,re,im,modulus'");
  }
  std::vector<Complex> out;
  for (const auto& [line, v] : table.rows) out.emplace_back(v[1], v[2]);
  if (out.empty()) throw Error(ErrorKind::ParseError, std::string(source) + ": no data rows");
  return out;
}

Json to_json(const CircleConfig& config) {
  Json j{{"variant", std::string(to_string(config.kind))}};
  j["angle"] = config.angle ? Json(*config.angle) : Json(nullptr);
  return j;
}

Json to_json(const AngleClass& angle) {
  return std::visit(
      Overloaded{
          [](const RationalMultipleOfPi& r) {
            return Json{{"kind", "Rational"}, {"p", r.p}, {"q", r.q}, {"residual", r.residual}};
          },
          [](const PresumedIrrational& i) {
            return Json{{"kind", "PresumedIrrational"},
                        {"best_q", i.best_q},
                        {"best_residual", i.best_residual}};
          },
      },
      angle);
}

Json to_json(const RetrievalCertificate& cert) {
  Json poles = Json::array();
  for (const Complex p : cert.interior_poles) poles.push_back(to_json(p));
  return {{"r", cert.r},
          {"samples_T", cert.samples_T},
          {"samples_r", cert.samples_r},
          {"fit_degree", cert.fit_degree},
          {"origin_zeros", cert.origin_zeros},
          {"fit_residuals", cert.fit_residuals},
          {"singular_ratio", cert.singular_ratio},
          {"rank_deficient", cert.rank_deficient},
          {"interior_poles", poles},
          {"inner_residual", cert.inner_residual},
          {"residual_tol", cert.residual_tol}};
}

Json to_json(const FinitePointCertificate& cert) {
  Json j{{"verdict", std::string(to_string(cert.verdict))},
         {"r", cert.r},
         {"points", cert.points},
         {"agreeing_points", cert.agreeing_points},
         {"bound", cert.bound},
         {"tol", cert.tol},
         {"polynomial_identically_zero", cert.polynomial_identically_zero},
         {"polynomial_max_coeff", cert.polynomial_max_coeff},
         {"polynomial_scale", cert.polynomial_scale},
         {"zero_threshold", cert.zero_threshold}};
  j["lambda"] = cert.lambda ? to_json(*cert.lambda) : Json(nullptr);
  return j;
}

Json to_json(const EqualModulusReport& report) {
  return {{"max_deviation", report.max_deviation},
          {"worst_point", to_json(report.worst_point)},
          {"worst_index", report.worst_index},
          {"n_points", report.n_points},
          {"within_tolerance", report.within_tolerance}};
}

Json to_json(const InversePointsReport& report) {
  return {{"c1", to_json(report.c1)},
          {"c2", to_json(report.c2)},
          {"z_plus", to_json(report.z_plus)},
          {"z_minus", to_json(report.z_minus)},
          {"inverse_in_c1", to_json(report.inverse_in_c1)},
          {"inverse_in_c2", to_json(report.inverse_in_c2)},
          {"modulus_on_c1", report.modulus_on_c1},
          {"modulus_on_c2", report.modulus_on_c2},
          {"spread_on_c1", report.spread_on_c1},
          {"spread_on_c2", report.spread_on_c2},
          {"stddev_on_c1", report.stddev_on_c1},
          {"stddev_on_c2", report.stddev_on_c2},
          {"samples", report.samples}};
}

}  // namespace phasedisc
