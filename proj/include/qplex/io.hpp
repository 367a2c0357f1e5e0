#pragma once

// JSON serialization: complex numbers as [re, im], matrices row-major,
// and a deterministic dump that prints doubles with 17 significant
// digits (round-trip exact).

#include "qplex/operator_core.hpp"
#include "qplex/qplex.hpp"
#include "qplex/sic.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>

namespace qplex {

using Json = nlohmann::ordered_json;

namespace detail {

inline void dump_json_to(const Json& j, std::string& out, int indent, int depth) {
  auto pad = [&](int n) { out.append(static_cast<size_t>(n) * indent, ' '); };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        pad(depth + 1);
        out += Json(it.key()).dump();
        out += ": ";
        dump_json_to(it.value(), out, indent, depth + 1);
      }
      out += "\n";
      pad(depth);
      out += "}";
      break;
    }
    case Json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      out += "[";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ", ";
        first = false;
        dump_json_to(el, out, indent, depth + 1);
      }
      out += "]";
      break;
    }
    case Json::value_t::number_float: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
      out += buf;
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace detail

inline std::string dump_json(const Json& j, int indent = 2) {
  std::string out;
  detail::dump_json_to(j, out, indent, 0);
  out += "\n";
  return out;
}

inline Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const Json& j) {
  return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  const auto rows = j.size();
  const auto cols = j.at(0).size();
  ComplexMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j.at(r).at(c));
  return m;
}

inline Json real_vector_to_json(const RealVector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

inline RealVector real_vector_from_json(const Json& j) {
  RealVector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j.at(i).get<double>();
  return v;
}

inline Json real_matrix_to_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline RealMatrix real_matrix_from_json(const Json& j) {
  const auto rows = j.size();
  const auto cols = j.at(0).size();
  RealMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
  return m;
}

inline Json params_to_json(const QplexParams& p) {
  return Json{{"d", p.d}, {"q", p.q}, {"N", p.N}, {"L", p.L}, {"U", p.U}};
}

// Fiducial file: { "d", "amplitudes": [[re, im], ...], "potential", "seed" }
inline Json fiducial_to_json(const PureState& fid, double potential, std::uint64_t seed) {
  Json amps = Json::array();
  for (int k = 0; k < fid.dim(); ++k) amps.push_back(complex_to_json(fid.amplitudes(k)));
  return Json{{"d", fid.dim()},
              {"amplitudes", std::move(amps)},
              {"potential", potential},
              {"seed", seed}};
}

inline PureState fiducial_from_json(const Json& j) {
  const auto& amps = j.at("amplitudes");
  ComplexVector v(amps.size());
  for (size_t k = 0; k < amps.size(); ++k)
    v(static_cast<Eigen::Index>(k)) = complex_from_json(amps.at(k));
  return PureState{std::move(v)};
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << dump_json(j);
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return Json::parse(in);
}

}  // namespace qplex
