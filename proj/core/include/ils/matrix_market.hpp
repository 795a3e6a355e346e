#pragma once

#include <filesystem>
#include <iosfwd>

#include "ils/sparse_matrix.hpp"

namespace ils {

/// Reads a `%%MatrixMarket matrix coordinate real general|symmetric` file.
/// Symmetric storage is expanded to both triangles. Pattern, complex, integer
/// and array formats are rejected with ErrorCode::UnsupportedFormat.
[[nodiscard]] SparseMatrix read_matrix_market(const std::filesystem::path& path);
[[nodiscard]] SparseMatrix read_matrix_market(std::istream& in);

/// Writes coordinate real general format (1-based).
void write_matrix_market(std::ostream& out, const SparseMatrix& a);

}  // namespace ils
