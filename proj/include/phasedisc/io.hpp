#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "phasedisc/constructions.hpp"
#include "phasedisc/function_expr.hpp"
#include "phasedisc/retrieval.hpp"

namespace phasedisc {

using Json = nlohmann::json;

/// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

Json to_json(Complex z);
Json to_json(const Circle& c);
Json to_json(const Polynomial& p);
Json to_json(const MoebiusMap& m);
Json to_json(const BlaschkeProduct& b);
Json to_json(const FunctionExpr& f);

/// Parsers throw ParseError naming the offending JSON path.
Complex complex_from_json(const Json& j, std::string_view path = "$");
Circle circle_from_json(const Json& j, std::string_view path = "$");
FunctionExpr function_from_json(const Json& j, std::string_view path = "$");

/// "cx,cy,r".
Circle parse_circle_triple(std::string_view text);

/// Set grammar: circle:cx,cy,r[,n] | segment:x1,y1,x2,y2[,n] | file:path.
/// A file holds an index,re,im[,modulus] CSV. n defaults to default_n.
PointSet parse_set_spec(std::string_view spec, int default_n = 512);

Json read_json_file(const std::string& path);

/// Unit-circle data, header "t,modulus".
void write_t_csv(std::ostream& out, const ModulusData& data);
/// General points, header "index,re,im,modulus".
void write_points_csv(std::ostream& out, const std::vector<Complex>& points,
                      const std::vector<double>& moduli);

/// Reads either CSV flavour as samples on the origin-centred circle of the
/// given radius. With require_uniform the "t" column must be the grid
/// t_0 + 2 pi k / n within 1e-12. Errors carry the line number.
ModulusData read_modulus_csv(std::istream& in, double radius, bool require_uniform,
                             std::string_view source = "<csv>");
ModulusData read_modulus_csv_file(const std::string& path, double radius, bool require_uniform);

/// Points of an index,re,im[,modulus] CSV.
std::vector<Complex> read_points_csv(std::istream& in, std::string_view source = "<csv>");

Json to_json(const CircleConfig& config);
Json to_json(const AngleClass& angle);
Json to_json(const RetrievalCertificate& cert);
Json to_json(const FinitePointCertificate& cert);
Json to_json(const EqualModulusReport& report);
Json to_json(const InversePointsReport& report);

}  // namespace phasedisc
