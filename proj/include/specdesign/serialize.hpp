#ifndef SPECDESIGN_SERIALIZE_HPP
#define SPECDESIGN_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "specdesign/scenarios.hpp"
#include "specdesign/verify.hpp"

namespace specdesign {

using Json = nlohmann::ordered_json;

// Complex numbers serialize as [re, im] pairs everywhere; terms as
// {"c": [re, im], "m": int, "k": [re, im]}.
Json to_json(Complex z);
Json to_json(const ExpPoly& p);
Json to_json(const VecFun& v);
Json to_json(const MatFun& m);
Json to_json(const RatVecFun& v);
Json to_json(const RatMatFun& m);
Json to_json(const CMat& m);
Json to_json(const Hamiltonian& h);
Json to_json(const IntertwiningOperator& q);
Json to_json(const TransformationSet& s);
Json to_json(const ScenarioConfig& c);
Json to_json(const VerificationReport& r);
Json to_json(const NonvanishingReport& r);

Complex complex_from_json(const Json& j);
ExpPoly exppoly_from_json(const Json& j);
VecFun vecfun_from_json(const Json& j);
MatFun matfun_from_json(const Json& j);
RatVecFun ratvec_from_json(const Json& j);
RatMatFun ratmat_from_json(const Json& j);
CMat cmat_from_json(const Json& j);
Hamiltonian hamiltonian_from_json(const Json& j);
IntertwiningOperator operator_from_json(const Json& j);
TransformationSet set_from_json(const Json& j);
ScenarioConfig config_from_json(const Json& j);

// Throws ValidationError with a parse diagnostic on malformed input.
Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

// CSV table with an x column followed by Re/Im columns per entry; values are
// printed with 17 significant digits, '.' decimal point, ',' separators and
// '\n' line ends.
struct ExportTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::string to_csv() const;
};

ExportTable export_matrix(const RatMatFun& m, const std::string& label, double xmin, double xmax,
                          int samples);
ExportTable export_vector(const RatVecFun& v, const std::string& label, double xmin, double xmax,
                          int samples);
ExportTable export_scalar(const ExpPoly& p, const std::string& label, double xmin, double xmax,
                          int samples);

} // namespace specdesign

#endif
