#include "ils/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ils {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if constexpr (std::is_floating_point_v<T>) {
    if (!tok.empty() && *first == '+') ++first;
  }
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedHeader, "empty input");
  const auto banner = split_ws(line);
  if (banner.size() != 5 || banner[0] != "%%MatrixMarket")
    throw Error(ErrorCode::MalformedHeader, "expected '%%MatrixMarket matrix coordinate real general|symmetric'");
  const std::string object = lower(std::string(banner[1]));
  const std::string format = lower(std::string(banner[2]));
  const std::string field = lower(std::string(banner[3]));
  const std::string symmetry = lower(std::string(banner[4]));
  if (object != "matrix") throw Error(ErrorCode::MalformedHeader, "object must be 'matrix'");
  if (format != "coordinate") throw Error(ErrorCode::UnsupportedFormat, "only coordinate format is supported");
  if (field != "real") throw Error(ErrorCode::UnsupportedFormat, "field '" + field + "' is not supported");
  if (symmetry != "general" && symmetry != "symmetric")
    throw Error(ErrorCode::UnsupportedFormat, "symmetry '" + symmetry + "' is not supported");
  const bool symmetric = symmetry == "symmetric";

  std::size_t line_no = 1;
  do {
    if (!std::getline(in, line)) throw Error(ErrorCode::MalformedHeader, "missing size line");
    ++line_no;
  } while (line.starts_with('%') || is_blank(line));

  const auto size_tok = split_ws(line);
  std::size_t nrows = 0, ncols = 0, nnz = 0;
  if (size_tok.size() != 3 || !parse_number(size_tok[0], nrows) || !parse_number(size_tok[1], ncols) ||
      !parse_number(size_tok[2], nnz))
    throw Error(ErrorCode::MalformedHeader, "bad size line " + std::to_string(line_no) + ": '" + line + "'");

  std::vector<Triplet> triplets;
  triplets.reserve(symmetric ? 2 * nnz : nnz);
  std::size_t seen = 0;
  while (seen < nnz && std::getline(in, line)) {
    ++line_no;
    if (line.starts_with('%') || is_blank(line)) continue;
    const auto tok = split_ws(line);
    std::size_t i = 0, j = 0;
    double v = 0.0;
    if (tok.size() != 3 || !parse_number(tok[0], i) || !parse_number(tok[1], j) || !parse_number(tok[2], v))
      throw Error(ErrorCode::NonNumericEntry, "line " + std::to_string(line_no) + ": '" + line + "'");
    if (i < 1 || j < 1 || i > nrows || j > ncols)
      throw Error(ErrorCode::EntryOutOfBounds, "line " + std::to_string(line_no) + ": (" + std::to_string(i) + ", " +
                                                   std::to_string(j) + ") outside declared " +
                                                   std::to_string(nrows) + "x" + std::to_string(ncols));
    triplets.push_back({i - 1, j - 1, v});
    if (symmetric && i != j) triplets.push_back({j - 1, i - 1, v});
    ++seen;
  }
  if (seen < nnz)
    throw Error(ErrorCode::MalformedHeader,
                "declared " + std::to_string(nnz) + " entries, found " + std::to_string(seen));
  return csr_from_triplets(triplets, nrows, ncols);
}

SparseMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseMatrix& a) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
  out << std::setprecision(17);
  for (const auto& t : to_triplets(a)) out << t.row + 1 << ' ' << t.col + 1 << ' ' << t.value << '\n';
}

}  // namespace ils
