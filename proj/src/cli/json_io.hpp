#pragma once

// JSON encodings shared by the command-line reports and input files.
// Complex numbers are [re, im]; matrices are arrays of rows.

#include <string>

#include <json.hpp>

#include "egeo/cech_brauer.hpp"
#include "egeo/rank_geometry.hpp"
#include "egeo/separability.hpp"

namespace egeo::cli {

using Json = nlohmann::json;

Json to_json(Complex z);
Json to_json(const CVector& v);
Json to_json(const CMatrix& m);
Json to_json(const Eigen::VectorXd& v);
/// A JSON integer when it fits in 64 bits, else its decimal string.
Json bigint_to_json(const BigInt& x);
Json to_json(const PureState& s);
Json to_json(const Partition& p);
Json to_json(const CechCover& c);

/// Throws Error(Parse) on malformed input.
Complex complex_from_json(const Json& j);
CMatrix matrix_from_json(const Json& j);
PureState state_from_json(const Json& j);
Partition partition_from_json(const Json& j);
CechCover cover_from_json(const Json& j);

Json read_json_file(const std::string& path);

}  // namespace egeo::cli
