#pragma once

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hopfhom/builders.hpp"
#include "hopfhom/calculus.hpp"

namespace hopfhom {

using json = nlohmann::ordered_json;

// Field tag carried by every file: "Q" or "GF(p)" (also accepted: "GFp").
struct FieldSpec {
  bool rational = true;
  std::uint64_t p = 0;

  static std::optional<FieldSpec> parse(const std::string& s) {
    if (s == "Q" || s == "q") return FieldSpec{true, 0};
    std::string t = s;
    if (t.rfind("GF", 0) != 0 && t.rfind("gf", 0) != 0) return std::nullopt;
    t = t.substr(2);
    if (!t.empty() && t.front() == '(') {
      if (t.back() != ')') return std::nullopt;
      t = t.substr(1, t.size() - 2);
    }
    if (t.empty()) return std::nullopt;
    std::uint64_t p = 0;
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      p = p * 10 + static_cast<std::uint64_t>(c - '0');
      if (p > (std::uint64_t{1} << 31)) return std::nullopt;
    }
    if (p < 2) return std::nullopt;
    return FieldSpec{false, p};
  }
  std::string str() const { return rational ? "Q" : "GF(" + std::to_string(p) + ")"; }
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io_detail {

template <FieldScalar K>
K scalar_from_json(const json& v) {
  if (v.is_number_integer()) return K::from_int(v.get<long long>());
  if (v.is_string()) {
    auto parsed = K::parse(v.get<std::string>());
    if (!parsed) throw ParseError("bad scalar literal: " + v.get<std::string>());
    return *parsed;
  }
  throw ParseError("scalar must be an integer or a \"num/den\" string");
}

template <FieldScalar K>
json scalar_to_json(const K& v) {
  return json(v.str());
}

template <FieldScalar K>
Matrix<K> dense_matrix_from_json(const json& v, std::size_t rows, std::size_t cols,
                                 const std::string& what) {
  if (!v.is_array() || v.size() != rows) throw ParseError(what + ": expected " + std::to_string(rows) + " rows");
  Matrix<K> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!v[r].is_array() || v[r].size() != cols)
      throw ParseError(what + ": row " + std::to_string(r) + " must have " + std::to_string(cols) +
                       " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json<K>(v[r][c]);
  }
  return m;
}

template <FieldScalar K>
std::vector<K> vector_from_json(const json& v, std::size_t len, const std::string& what) {
  if (!v.is_array() || v.size() != len)
    throw ParseError(what + ": expected " + std::to_string(len) + " entries");
  std::vector<K> out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = scalar_from_json<K>(v[i]);
  return out;
}

// Sparse triples [i, j, k, value] or a dense 3-nested array.
template <FieldScalar K>
Tensor3<K> tensor_from_json(const json& v, std::size_t n, const std::string& what) {
  Tensor3<K> t(n, n, n);
  if (!v.is_array()) throw ParseError(what + ": expected an array");
  const bool sparse = v.empty() || (v[0].is_array() && v[0].size() == 4 && !v[0][0].is_array());
  if (sparse) {
    for (const auto& e : v) {
      if (!e.is_array() || e.size() != 4) throw ParseError(what + ": sparse entries are [i,j,k,value]");
      const std::size_t i = e[0].get<std::size_t>(), j = e[1].get<std::size_t>(),
                        k = e[2].get<std::size_t>();
      if (i >= n || j >= n || k >= n) throw ParseError(what + ": index out of range");
      t(i, j, k) = scalar_from_json<K>(e[3]);
    }
  } else {
    if (v.size() != n) throw ParseError(what + ": dense tensor must have dim slices");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!v[i].is_array() || v[i].size() != n || !v[i][j].is_array() || v[i][j].size() != n)
          throw ParseError(what + ": dense tensor shape mismatch");
        for (std::size_t k = 0; k < n; ++k) t(i, j, k) = scalar_from_json<K>(v[i][j][k]);
      }
  }
  return t;
}

template <FieldScalar K>
json tensor_to_json(const Tensor3<K>& t) {
  json out = json::array();
  for (std::size_t i = 0; i < t.dim(0); ++i)
    for (std::size_t j = 0; j < t.dim(1); ++j)
      for (std::size_t k = 0; k < t.dim(2); ++k)
        if (!t(i, j, k).is_zero()) out.push_back({i, j, k, t(i, j, k).str()});
  return out;
}

}  // namespace io_detail

inline FieldSpec field_of_file(const json& j) {
  if (!j.contains("field")) return FieldSpec{true, 0};
  auto fs = FieldSpec::parse(j.at("field").get<std::string>());
  if (!fs) throw ParseError("unknown field tag: " + j.at("field").get<std::string>());
  return *fs;
}

// HopfFileV1 -> FinHopfAlgebra (parse only; certification is a separate,
// explicit step).
template <FieldScalar K>
FinHopfAlgebra<K> hopf_from_json(const json& j) {
  using namespace io_detail;
  if (j.value("schema_version", 0) != 1) throw ParseError("unsupported schema_version");
  FinHopfAlgebra<K> h;
  h.name = j.value("name", "unnamed");
  h.dim = j.at("dim").get<std::size_t>();
  if (h.dim == 0) throw ParseError("dim must be positive");
  if (j.contains("basis_labels")) h.basis_labels = j.at("basis_labels").get<std::vector<std::string>>();
  h.mult = tensor_from_json<K>(j.at("mult"), h.dim, "mult");
  auto unit = vector_from_json<K>(j.at("unit"), h.dim, "unit");
  h.unit = Matrix<K>(h.dim, 1);
  for (std::size_t i = 0; i < h.dim; ++i) h.unit(i, 0) = unit[i];
  h.comult = tensor_from_json<K>(j.at("comult"), h.dim, "comult");
  auto counit = vector_from_json<K>(j.at("counit"), h.dim, "counit");
  h.counit = Matrix<K>(1, h.dim);
  for (std::size_t i = 0; i < h.dim; ++i) h.counit(0, i) = counit[i];
  h.antipode = dense_matrix_from_json<K>(j.at("antipode"), h.dim, h.dim, "antipode");
  return h;
}

template <FieldScalar K>
json hopf_to_json(const FinHopfAlgebra<K>& h, const FieldSpec& fs) {
  using namespace io_detail;
  json j;
  j["schema_version"] = 1;
  j["kind"] = "hopf_algebra";
  j["name"] = h.name;
  j["field"] = fs.str();
  j["dim"] = h.dim;
  json labels = json::array();
  for (std::size_t i = 0; i < h.dim; ++i) labels.push_back(h.label(i));
  j["basis_labels"] = labels;
  j["mult"] = tensor_to_json(h.mult);
  json unit = json::array();
  for (std::size_t i = 0; i < h.dim; ++i) unit.push_back(h.unit(i, 0).str());
  j["unit"] = unit;
  j["comult"] = tensor_to_json(h.comult);
  json counit = json::array();
  for (std::size_t i = 0; i < h.dim; ++i) counit.push_back(h.counit(0, i).str());
  j["counit"] = counit;
  json s = json::array();
  for (std::size_t r = 0; r < h.dim; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < h.dim; ++c) row.push_back(h.antipode(r, c).str());
    s.push_back(row);
  }
  j["antipode"] = s;
  return j;
}

// GroupFileV1: a Cayley table or permutation generators, plus which Hopf
// algebra to build from the group.
struct GroupFile {
  GroupTable table;
  std::string algebra;  // "group" | "function"
  std::string name;
};

inline GroupFile group_from_json(const json& j) {
  if (j.value("schema_version", 0) != 1) throw ParseError("unsupported schema_version");
  std::string algebra = j.value("algebra", "group");
  if (algebra != "group" && algebra != "function")
    throw ParseError("group file: algebra must be \"group\" or \"function\"");
  std::string name = j.value("name", "group");
  try {
    if (j.contains("cayley")) {
      auto table = j.at("cayley").get<std::vector<std::vector<std::size_t>>>();
      std::vector<std::string> labels;
      if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
      return GroupFile{GroupTable::from_cayley(std::move(table), std::move(labels)), algebra, name};
    }
    if (j.contains("generators")) {
      auto gens = j.at("generators").get<std::vector<std::vector<std::size_t>>>();
      std::size_t cap = j.value("element_cap", std::size_t{5000});
      return GroupFile{GroupTable::from_permutation_generators(gens, cap), algebra, name};
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("group file: ") + e.what());
  }
  throw ParseError("group file: needs \"cayley\" or \"generators\"");
}

template <FieldScalar K>
FinHopfAlgebra<K> hopf_from_group_file(const GroupFile& g) {
  return g.algebra == "function" ? build_function_algebra<K>(g.table, g.name)
                                 : build_group_algebra<K>(g.table, g.name);
}

// Any file that denotes a Hopf algebra: kind "hopf_algebra" or "group".
template <FieldScalar K>
FinHopfAlgebra<K> hopf_like_from_json(const json& j) {
  const std::string kind = j.value("kind", "hopf_algebra");
  if (kind == "group") return hopf_from_group_file<K>(group_from_json(j));
  return hopf_from_json<K>(j);
}

// SurjectionFileV1: the matrix plus the target (inline object) and the name
// of the source, which must match the P file given alongside.
template <FieldScalar K>
struct SurjectionFile {
  std::string source_name;
  FinHopfAlgebra<K> target;
  Matrix<K> matrix;
};

template <FieldScalar K>
SurjectionFile<K> surjection_from_json(const json& j) {
  if (j.value("schema_version", 0) != 1) throw ParseError("unsupported schema_version");
  SurjectionFile<K> s;
  s.source_name = j.value("source", "");
  if (!j.contains("target") || !j.at("target").is_object())
    throw ParseError("surjection file: needs an inline \"target\" object");
  s.target = hopf_like_from_json<K>(j.at("target"));
  s.matrix = io_detail::dense_matrix_from_json<K>(j.at("matrix"), s.target.dim,
                                                  j.at("matrix").at(0).size(), "matrix");
  return s;
}

template <FieldScalar K>
json surjection_to_json(const HopfSurjection<K>& s, const FieldSpec& fs) {
  json j;
  j["schema_version"] = 1;
  j["kind"] = "hopf_surjection";
  j["name"] = s.source.name + "->" + s.target.name;
  j["field"] = fs.str();
  j["source"] = s.source.name;
  j["target"] = hopf_to_json(s.target, fs);
  json m = json::array();
  for (std::size_t r = 0; r < s.matrix.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < s.matrix.cols(); ++c) row.push_back(s.matrix(r, c).str());
    m.push_back(row);
  }
  j["matrix"] = m;
  return j;
}

// Subspace file (used for ideals of P+): vectors in P+ coordinates or in the
// coordinates of P with automatic projection.
template <FieldScalar K>
Subspace<K> subspace_from_json(const json& j, std::size_t ambient, const std::string& what) {
  if (!j.contains("vectors")) throw ParseError(what + ": needs \"vectors\"");
  const auto& v = j.at("vectors");
  if (!v.is_array()) throw ParseError(what + ": vectors must be an array");
  std::vector<std::vector<K>> rows;
  for (const auto& row : v) {
    auto r = io_detail::vector_from_json<K>(row, ambient, what);
    rows.push_back(std::move(r));
  }
  return Subspace<K>::from_rows(Matrix<K>::from_rows(ambient, rows));
}

// ---------------------------------------------------------------------------
// Built-in examples, addressable by name from the CLI and the tests.

template <FieldScalar K>
std::optional<HopfSurjection<K>> example_surjection(const std::string& name) {
  if (name == "sweedler") return sweedler_surjection<K>();
  if (name == "kz2")
    return trivial_surjection(build_function_algebra<K>(GroupTable::cyclic(2), "kz2"));
  if (name == "fs3")
    return trivial_surjection(build_function_algebra<K>(GroupTable::symmetric3(), "fs3"));
  if (name == "fs3_k12")
    return restriction_surjection<K>(GroupTable::symmetric3(), {0, 1}, "fs3", "fk12");
  return std::nullopt;
}

inline std::vector<std::string> example_names() { return {"sweedler", "kz2", "fs3", "fs3_k12"}; }

// ---------------------------------------------------------------------------
// ReportV1 helpers.

inline json report_to_json(const Report& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (!c.witness.empty()) e["witness"] = c.witness;
    checks.push_back(e);
  }
  return checks;
}

template <FieldScalar K>
json subspace_to_json(const Subspace<K>& s) {
  json j;
  j["ambient"] = s.ambient();
  j["dim"] = s.dim();
  json rows = json::array();
  for (std::size_t r = 0; r < s.dim(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < s.ambient(); ++c) row.push_back(s.basis_rows()(r, c).str());
    rows.push_back(row);
  }
  j["basis"] = rows;
  return j;
}

}  // namespace hopfhom
