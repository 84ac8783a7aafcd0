#pragma once

// Output formats: CSV tables (12 significant digits, '#' comment lines
// before the header, LF endings) and the density-matrix JSON document
// {"dim": M, "re": [[...]], "im": [[...]]}.

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specdis/error.hpp"
#include "specdis/reduced_state.hpp"

namespace specdis {

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(std::string_view text) {
    if (header_written_) throw std::logic_error("CSV comments must precede the header");
    out_ << "# " << text << '\n';
  }

  void header(const std::vector<std::string>& columns) {
    if (header_written_) throw std::logic_error("CSV header written twice");
    columns_ = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
    header_written_ = true;
  }

  void row(std::span<const double> values) {
    if (!header_written_) throw std::logic_error("CSV row before header");
    if (values.size() != columns_) throw DimensionMismatch("CSV row width does not match header");
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
    out_ << '\n';
  }

  void row(std::initializer_list<double> values) { row(std::span<const double>(values.begin(), values.size())); }

 private:
  std::ostream& out_;
  std::size_t columns_ = 0;
  bool header_written_ = false;
};

inline nlohmann::json to_json(const TargetDensityMatrix& rho) {
  const auto m = rho.dim();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m; ++i) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m; ++j) {
      re_row.push_back(rho(i, j).real());
      im_row.push_back(rho(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return {{"dim", m}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline TargetDensityMatrix density_matrix_from_json(const nlohmann::json& doc) {
  try {
    const auto m = doc.at("dim").get<Eigen::Index>();
    const auto& re = doc.at("re");
    const auto& im = doc.at("im");
    if (m <= 0 || re.size() != static_cast<std::size_t>(m) || im.size() != static_cast<std::size_t>(m)) {
      throw DimensionMismatch("density-matrix JSON rows do not match dim");
    }
    Eigen::MatrixXcd rho(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto& rr = re.at(i);
      const auto& ir = im.at(i);
      if (rr.size() != static_cast<std::size_t>(m) || ir.size() != static_cast<std::size_t>(m)) {
        throw DimensionMismatch("density-matrix JSON columns do not match dim");
      }
      for (Eigen::Index j = 0; j < m; ++j) rho(i, j) = {rr.at(j).get<double>(), ir.at(j).get<double>()};
    }
    return TargetDensityMatrix(std::move(rho));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed density-matrix JSON: ") + e.what());
  } catch (const NumericalFailure& e) {
    throw InvalidArgument(std::string("JSON does not hold a density matrix: ") + e.what());
  }
}

}  // namespace specdis
