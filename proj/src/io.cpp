#include "graphlim/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace graphlim {

std::string format_g15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header)
    : os_(os), columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) os_ << ',';
        os_ << header[i];
    }
    os_ << '\n';
}

CsvWriter& CsvWriter::field(double v) { return field(format_g15(v)); }
CsvWriter& CsvWriter::field(long long v) { return field(std::to_string(v)); }
CsvWriter& CsvWriter::field(std::size_t v) { return field(std::to_string(v)); }

CsvWriter& CsvWriter::field(const std::string& v) {
    if (in_row_) os_ << ',';
    os_ << v;
    ++in_row_;
    return *this;
}

void CsvWriter::end_row() {
    if (in_row_ != columns_) throw std::logic_error("CsvWriter: wrong number of fields in row");
    os_ << '\n';
    in_row_ = 0;
}

void write_matrix_market(std::ostream& os, const Matrix<double>& a) {
    os << "%%MatrixMarket matrix array real general\n";
    os << a.rows() << ' ' << a.cols() << '\n';
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) os << format_g15(a(i, j)) << '\n';
}

void write_matrix_market(std::ostream& os, const Matrix<cplx>& a) {
    os << "%%MatrixMarket matrix array complex general\n";
    os << a.rows() << ' ' << a.cols() << '\n';
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            os << format_g15(a(i, j).real()) << ' ' << format_g15(a(i, j).imag()) << '\n';
}

void write_matrix_market_symmetric(std::ostream& os, const Matrix<double>& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("write_matrix_market_symmetric: matrix must be square");
    std::size_t nnz = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = j; i < a.rows(); ++i)
            if (a(i, j) != 0.0) ++nnz;
    os << "%%MatrixMarket matrix coordinate real symmetric\n";
    os << a.rows() << ' ' << a.cols() << ' ' << nnz << '\n';
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = j; i < a.rows(); ++i)
            if (a(i, j) != 0.0)
                os << i + 1 << ' ' << j + 1 << ' ' << format_g15(a(i, j)) << '\n';
}

Matrix<cplx> read_matrix_market(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("%%MatrixMarket", 0) != 0)
        throw std::invalid_argument("read_matrix_market: missing header");
    std::istringstream hdr(line);
    std::string tag, object, format, field, symmetry;
    hdr >> tag >> object >> format >> field >> symmetry;
    if (object != "matrix")
        throw std::invalid_argument("read_matrix_market: unsupported object " + object);
    const bool coordinate = format == "coordinate";
    const bool complex_field = field == "complex";
    const bool symmetric = symmetry == "symmetric" || symmetry == "hermitian";

    while (std::getline(is, line))
        if (!line.empty() && line[0] != '%') break;
    std::istringstream dims(line);
    std::size_t rows = 0, cols = 0, nnz = 0;
    dims >> rows >> cols;
    if (coordinate) dims >> nnz;

    Matrix<cplx> a(rows, cols);
    if (coordinate) {
        for (std::size_t k = 0; k < nnz; ++k) {
            std::size_t i, j;
            double re, im = 0.0;
            is >> i >> j >> re;
            if (complex_field) is >> im;
            a(i - 1, j - 1) = cplx(re, im);
            if (symmetric && i != j) a(j - 1, i - 1) = std::conj(cplx(re, im));
        }
    } else {
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i) {
                double re, im = 0.0;
                is >> re;
                if (complex_field) is >> im;
                a(i, j) = cplx(re, im);
            }
    }
    if (!is) throw std::invalid_argument("read_matrix_market: truncated data");
    return a;
}

void write_values_csv(std::ostream& os, std::span<const double> values) {
    CsvWriter csv(os, {"index", "eigenvalue"});
    for (std::size_t i = 0; i < values.size(); ++i) {
        csv.field(i + 1).field(values[i]);
        csv.end_row();
    }
}

void write_vectors_csv(std::ostream& os, const Matrix<double>& vectors) {
    std::vector<std::string> header{"row"};
    for (std::size_t j = 0; j < vectors.cols(); ++j) header.push_back("v" + std::to_string(j + 1));
    CsvWriter csv(os, header);
    for (std::size_t i = 0; i < vectors.rows(); ++i) {
        csv.field(i);
        for (std::size_t j = 0; j < vectors.cols(); ++j) csv.field(vectors(i, j));
        csv.end_row();
    }
}

void write_vectors_csv(std::ostream& os, const Matrix<cplx>& vectors) {
    std::vector<std::string> header{"row"};
    for (std::size_t j = 0; j < vectors.cols(); ++j) {
        header.push_back("v" + std::to_string(j + 1) + "_re");
        header.push_back("v" + std::to_string(j + 1) + "_im");
    }
    CsvWriter csv(os, header);
    for (std::size_t i = 0; i < vectors.rows(); ++i) {
        csv.field(i);
        for (std::size_t j = 0; j < vectors.cols(); ++j)
            csv.field(vectors(i, j).real()).field(vectors(i, j).imag());
        csv.end_row();
    }
}

void write_json_sidecar(const std::filesystem::path& data_file,
                        const std::vector<std::pair<std::string, std::string>>& config) {
    nlohmann::json j;
    j["file"] = data_file.filename().string();
    j["toolkit_version"] = kToolkitVersion;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    j["config"] = cfg;
    std::filesystem::path side = data_file;
    side += ".json";
    std::ofstream os(side);
    if (!os) throw std::runtime_error("cannot write " + side.string());
    os << j.dump(2) << '\n';
}

}  // namespace graphlim
