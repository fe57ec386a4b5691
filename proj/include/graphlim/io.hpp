#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "graphlim/eigh.hpp"
#include "graphlim/matrix.hpp"

namespace graphlim {

/// CSV with a header row; numbers printed with 15 significant digits so
/// identical runs produce byte-identical files.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& header);
    CsvWriter& field(double v);
    CsvWriter& field(long long v);
    CsvWriter& field(std::size_t v);
    CsvWriter& field(const std::string& v);
    void end_row();

private:
    std::ostream& os_;
    std::size_t columns_;
    std::size_t in_row_ = 0;
};

std::string format_g15(double v);

/// Matrix Market dense array export/import ("real general" or
/// "complex general"), column-major entries.
void write_matrix_market(std::ostream& os, const Matrix<double>& a);
void write_matrix_market(std::ostream& os, const Matrix<cplx>& a);
Matrix<cplx> read_matrix_market(std::istream& is);

/// Coordinate symmetric export of a real symmetric matrix: lower triangle,
/// 1-based indices.
void write_matrix_market_symmetric(std::ostream& os, const Matrix<double>& a);

/// Eigendecomposition as two CSVs: (index, value) and a dense vector matrix
/// (row, then one pair of columns per vector: re, im when complex).
void write_values_csv(std::ostream& os, std::span<const double> values);
void write_vectors_csv(std::ostream& os, const Matrix<double>& vectors);
void write_vectors_csv(std::ostream& os, const Matrix<cplx>& vectors);

/// JSON sidecar next to every emitted file: config echo plus version.
void write_json_sidecar(const std::filesystem::path& data_file,
                        const std::vector<std::pair<std::string, std::string>>& config);

inline constexpr const char* kToolkitVersion = "0.1.0";

}  // namespace graphlim
