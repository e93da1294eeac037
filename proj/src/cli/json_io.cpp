#include "cli/json_io.hpp"

#include <fstream>
#include <limits>

namespace egeo::cli {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

template <typename T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    parse_error(std::string("bad ") + what);
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const CMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json bigint_to_json(const BigInt& x) {
  if (x <= std::numeric_limits<std::int64_t>::max() && x >= std::numeric_limits<std::int64_t>::min())
    return static_cast<std::int64_t>(x);
  return x.str();
}

Json to_json(const PureState& s) { return Json{{"dims", s.dims()}, {"coeffs", to_json(s.coeffs())}}; }

Json to_json(const Partition& p) { return Json{{"n", p.n_subsystems()}, {"blocks", p.blocks()}}; }

Json to_json(const CechCover& c) {
  Json pairs = Json::array();
  for (const auto& [key, g] : c.transitions) pairs.push_back(Json{{"i", key[0]}, {"j", key[1]}, {"lift", to_json(g)}});
  return Json{{"n", c.n},         {"m", c.m},         {"charts", c.chart_count}, {"pairs", pairs},
              {"triples", c.triples}, {"quads", c.quads}};
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    parse_error("complex numbers are [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) parse_error("matrices are nonempty arrays of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) parse_error("ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

PureState state_from_json(const Json& j) {
  const auto dims = get_as<std::vector<int>>(field(j, "dims"), "dims");
  const Json& coeffs = field(j, "coeffs");
  if (!coeffs.is_array()) parse_error("coeffs must be an array");
  CVector v(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(coeffs[i]);
  return make_state(dims, std::move(v));
}

Partition partition_from_json(const Json& j) {
  return Partition(get_as<int>(field(j, "n"), "n"), get_as<std::vector<std::vector<int>>>(field(j, "blocks"), "blocks"));
}

CechCover cover_from_json(const Json& j) {
  CechCover c;
  c.n = get_as<int>(field(j, "n"), "n");
  c.m = j.contains("m") ? get_as<int>(j.at("m"), "m") : 0;
  c.chart_count = get_as<int>(field(j, "charts"), "charts");
  const Json& pairs = field(j, "pairs");
  if (!pairs.is_array()) parse_error("pairs must be an array");
  for (const auto& p : pairs)
    c.transitions[{get_as<int>(field(p, "i"), "i"), get_as<int>(field(p, "j"), "j")}] =
        matrix_from_json(field(p, "lift"));
  c.triples = get_as<std::vector<Triple>>(field(j, "triples"), "triples");
  if (j.contains("quads")) c.quads = get_as<std::vector<Quad>>(j.at("quads"), "quads");
  return c;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(path + ": " + e.what());
  }
}

}  // namespace egeo::cli
