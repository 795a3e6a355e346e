#include <gtest/gtest.h>

#include <sstream>

#include "ils/matrix_market.hpp"
#include "test_util.hpp"

namespace ils {
namespace {

ErrorCode code_of(const std::string& text) {
  std::istringstream in(text);
  try {
    (void)read_matrix_market(in);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ErrorCode::Io;
}

TEST(MatrixMarket, GeneralDiagonal) {
  const SparseMatrix a = read_matrix_market(std::filesystem::path(ILS_TEST_DATA_DIR) / "diag_general.mtx");
  EXPECT_EQ(a.nnz(), 2u);
  EXPECT_EQ(a.at(0, 0), 1.0);
  EXPECT_EQ(a.at(1, 1), 2.0);
  EXPECT_EQ(a.at(0, 1), 0.0);
}

TEST(MatrixMarket, SymmetricExpanded) {
  const SparseMatrix a = read_matrix_market(std::filesystem::path(ILS_TEST_DATA_DIR) / "sym_offdiag.mtx");
  EXPECT_EQ(a.nnz(), 4u);
  EXPECT_EQ(a.at(1, 0), 3.0);
  EXPECT_EQ(a.at(0, 1), 3.0);
}

TEST(MatrixMarket, CommentsAfterHeader) {
  std::istringstream in("%%MatrixMarket matrix coordinate real general\n% c1\n%c2\n\n1 2 1\n1 2 -4.5e0\n");
  const SparseMatrix a = read_matrix_market(in);
  EXPECT_EQ(a.at(0, 1), -4.5);
}

TEST(MatrixMarket, DistinctErrors) {
  EXPECT_EQ(code_of("%%MatrixMarkt matrix coordinate real general\n1 1 1\n1 1 1\n"), ErrorCode::MalformedHeader);
  EXPECT_EQ(code_of("%%MatrixMarket matrix coordinate real general\n1 x 1\n"), ErrorCode::MalformedHeader);
  EXPECT_EQ(code_of("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 abc\n"), ErrorCode::NonNumericEntry);
  EXPECT_EQ(code_of("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n"), ErrorCode::EntryOutOfBounds);
  EXPECT_EQ(code_of("%%MatrixMarket matrix coordinate real general\n2 2 1\n0 1 1.0\n"), ErrorCode::EntryOutOfBounds);
  EXPECT_EQ(code_of("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n"), ErrorCode::UnsupportedFormat);
  EXPECT_EQ(code_of("%%MatrixMarket matrix coordinate complex general\n2 2 1\n1 1 1 0\n"),
            ErrorCode::UnsupportedFormat);
  EXPECT_EQ(code_of("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n"), ErrorCode::UnsupportedFormat);
  EXPECT_EQ(code_of("%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 1.0\n"), ErrorCode::MalformedHeader);
}

TEST(MatrixMarket, MissingFileIsIoError) {
  try {
    (void)read_matrix_market(std::filesystem::path("/nonexistent/file.mtx"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST(MatrixMarket, WriteReadRoundTrip) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const SparseMatrix a = testing::random_sparse(rng, 9, 6, 0.4);
    std::stringstream io;
    write_matrix_market(io, a);
    EXPECT_EQ(read_matrix_market(io), a);
  }
}

}  // namespace
}  // namespace ils
