#pragma once

// JSON interchange forms.
//
//   ComplexMatrix  {"rows": r, "cols": c, "re": [...], "im": [...]}   row-major
//   charges        {"charges": [n0, n1, ...]}
//   SU(2) rep      {"blocks": [{"twice_j": t, "mult": m}, ...]}
//   basis          [{"mu": mu, "m": m, "alpha": a, "matrix": ComplexMatrix}, ...]
//   channel        {"kraus": [ComplexMatrix, ...]}  or  {"liouville": ComplexMatrix}
//   coefficients   {"coefficients": {"0": 1.0, "1": 0.9, ...}}

#include "asymmodes/core.hpp"
#include "asymmodes/su2.hpp"
#include "asymmodes/tensor_basis.hpp"
#include "asymmodes/u1.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace asymmodes::io {

using json = nlohmann::json;

/// Malformed or inconsistent input; `what()` carries file and position when known.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json parse_json(const std::string& text, const std::string& source = "<input>") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": malformed JSON (" + e.what() + ")");
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

inline json to_json(const ComplexMatrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
  try {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    if (rows <= 0 || cols <= 0) throw InputError("matrix: rows and cols must be positive");
    const auto& re = j.at("re");
    const auto n = static_cast<std::size_t>(rows * cols);
    if (!re.is_array() || re.size() != n) throw InputError("matrix: 're' must hold rows*cols numbers");
    const bool has_im = j.contains("im");
    if (has_im && (!j["im"].is_array() || j["im"].size() != n))
      throw InputError("matrix: 'im' must hold rows*cols numbers");
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index c = 0; c < cols; ++c) {
        const auto k = static_cast<std::size_t>(i * cols + c);
        m(i, c) = cplx(re[k].get<double>(), has_im ? j["im"][k].get<double>() : 0.0);
      }
    return m;
  } catch (const json::exception& e) {
    throw InputError(std::string("matrix: ") + e.what());
  }
}

/// A density matrix, or a column vector taken as a pure state.
inline DensityMatrix state_from_json(const json& j, double tol = kDefaultTol) {
  const ComplexMatrix m = matrix_from_json(j);
  try {
    if (m.cols() == 1) return DensityMatrix::pure(m.col(0), tol);
    return DensityMatrix(m, tol);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("state: ") + e.what());
  }
}

inline json to_json(const U1Representation& rep) { return {{"charges", rep.charges}}; }

inline U1Representation charges_from_json(const json& j) {
  try {
    U1Representation r{j.at("charges").get<std::vector<int>>()};
    if (r.charges.empty()) throw InputError("charges: list is empty");
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("charges: ") + e.what());
  }
}

inline json to_json(const SU2Representation& rep) {
  json blocks = json::array();
  for (const auto& b : rep.blocks()) blocks.push_back({{"twice_j", b.j.twice}, {"mult", b.mult}});
  return {{"blocks", blocks}};
}

inline SU2Representation rep_from_json(const json& j) {
  try {
    std::vector<SU2Representation::Block> blocks;
    for (const auto& b : j.at("blocks"))
      blocks.push_back({HalfInteger::from_twice(b.at("twice_j").get<int>()), b.value("mult", 1)});
    return SU2Representation(std::move(blocks));
  } catch (const json::exception& e) {
    throw InputError(std::string("representation: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("representation: ") + e.what());
  }
}

inline json half_integer_json(HalfInteger h) {
  if (h.is_integer()) return h.twice / 2;
  return h.value();
}

inline json to_json(const TensorOperatorBasis& basis) {
  json out = json::array();
  for (const auto& t : basis)
    out.push_back({{"mu", half_integer_json(t.mu)},
                   {"m", half_integer_json(t.m)},
                   {"alpha", t.alpha},
                   {"matrix", to_json(t.op)}});
  return out;
}

inline Superoperator channel_from_json(const json& j) {
  try {
    if (j.contains("kraus")) {
      std::vector<ComplexMatrix> kraus;
      for (const auto& k : j["kraus"]) kraus.push_back(matrix_from_json(k));
      return channel_from_kraus(kraus).channel;
    }
    if (j.contains("liouville")) {
      ComplexMatrix l = matrix_from_json(j["liouville"]);
      const auto out = static_cast<Eigen::Index>(std::llround(std::sqrt(double(l.rows()))));
      const auto in = static_cast<Eigen::Index>(std::llround(std::sqrt(double(l.cols()))));
      if (out * out != l.rows() || in * in != l.cols())
        throw InputError("channel: Liouville matrix dimensions are not perfect squares");
      return Superoperator(in, out, std::move(l));
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("channel: ") + e.what());
  }
  throw InputError("channel: expected a 'kraus' or 'liouville' field");
}

inline json to_json(const Superoperator& e) { return {{"liouville", to_json(e.liouville())}}; }

/// {"coefficients": {"mu": c}} with integer ranks.
inline std::map<int, double> coefficients_from_json(const json& j) {
  try {
    std::map<int, double> c;
    for (const auto& [key, value] : j.at("coefficients").items()) c[std::stoi(key)] = value.get<double>();
    return c;
  } catch (const json::exception& e) {
    throw InputError(std::string("coefficients: ") + e.what());
  } catch (const std::logic_error& e) {
    throw InputError(std::string("coefficients: bad rank key (") + e.what() + ")");
  }
}

}  // namespace asymmodes::io
