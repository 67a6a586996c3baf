#pragma once

#include <json.hpp>

#include "siegel/haar.hpp"
#include "siegel/intersections.hpp"
#include "siegel/iwasawa.hpp"
#include "siegel/matrix.hpp"
#include "siegel/reduction.hpp"
#include "siegel/symbolic.hpp"
#include "siegel/tolerances.hpp"
#include "siegel/volumes.hpp"

// JSON shapes shared by the CLI and the tests. Real matrices are {"n", "entries"} with a
// row-major number array; integer matrices use decimal strings for the entries.

namespace siegel {

using Json = nlohmann::json;

Json to_json(const SquareMatrix& m);
/// Throws MalformedInput on shape or type errors.
SquareMatrix square_matrix_from_json(const Json& j);

Json to_json(const IntMatrix& m);
/// Entries may be decimal strings or JSON integers.
IntMatrix int_matrix_from_json(const Json& j);

Json to_json(const Tolerances& t);
Json to_json(const IwasawaFactors& f);
Json to_json(const SymbolicVolume& v);
Json to_json(const MonteCarloEstimate& e);
Json to_json(const ReductionResult& r);
Json to_json(const FilterTrace& t);
Json to_json(const IntersectionReport& r);
Json to_json(const EnumerationSummary& s);
Json to_json(const GrowthRow& r);
Json to_json(const FormulaCheck& c);

}  // namespace siegel
