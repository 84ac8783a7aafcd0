#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "specdis/io.hpp"

using namespace specdis;

TEST(FormatNumber, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(-2.5e-9), "-2.5e-09");
  EXPECT_EQ(format_number(123456789.123456), "123456789.123");
}

TEST(CsvWriterTest, CommentsHeaderRows) {
  std::ostringstream out;
  CsvWriter csv(out);
  csv.comment("specdis test");
  csv.header({"t", "n0"});
  csv.row({0.0, 1.0});
  csv.row(std::vector<double>{0.1, 0.25});
  EXPECT_EQ(out.str(), "# specdis test\nt,n0\n0,1\n0.1,0.25\n");
}

TEST(CsvWriterTest, EnforcesLayout) {
  std::ostringstream out;
  CsvWriter csv(out);
  EXPECT_THROW(csv.row({1.0}), std::logic_error);
  csv.header({"a", "b"});
  EXPECT_THROW(csv.comment("late"), std::logic_error);
  EXPECT_THROW(csv.header({"a"}), std::logic_error);
  EXPECT_THROW(csv.row({1.0, 2.0, 3.0}), DimensionMismatch);
}

TEST(DensityMatrixJson, Schema) {
  TargetState s(2);
  s << std::sqrt(0.5), std::complex<double>(0.0, std::sqrt(0.5));
  const auto doc = to_json(projector(s));
  EXPECT_EQ(doc.at("dim").get<int>(), 2);
  EXPECT_NEAR(doc.at("re")[0][0].get<double>(), 0.5, 1e-15);
  EXPECT_NEAR(doc.at("im")[1][0].get<double>(), 0.5, 1e-15);
  EXPECT_NEAR(doc.at("im")[0][1].get<double>(), -0.5, 1e-15);
}

TEST(DensityMatrixJson, RoundTripRandomStates) {
  std::mt19937 rng(99);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index m = 1 + trial % 5;
    Eigen::MatrixXcd a(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) a(i, j) = {g(rng), g(rng)};
    Eigen::MatrixXcd rho = a * a.adjoint();
    rho /= rho.trace();
    const TargetDensityMatrix original(rho);
    // through text, as the files are used
    const auto back = density_matrix_from_json(nlohmann::json::parse(to_json(original).dump()));
    EXPECT_EQ((back.matrix() - original.matrix()).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(DensityMatrixJson, RejectsMalformedDocuments) {
  using nlohmann::json;
  EXPECT_THROW(density_matrix_from_json(json::parse(R"({"re": [[1]], "im": [[0]]})")), InvalidArgument);
  EXPECT_THROW(density_matrix_from_json(json::parse(R"({"dim": 2, "re": [[1]], "im": [[0]]})")),
               DimensionMismatch);
  EXPECT_THROW(density_matrix_from_json(json::parse(R"({"dim": 1, "re": [["x"]], "im": [[0]]})")),
               InvalidArgument);
  // valid shape but not a density matrix
  EXPECT_THROW(density_matrix_from_json(json::parse(R"({"dim": 1, "re": [[2]], "im": [[0]]})")),
               InvalidArgument);
}
