#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace graphlim {

using cplx = std::complex<double>;

/// Dense column-major matrix over double or std::complex<double>.
/// Columns are contiguous, which is what the eigensolver and the
/// basis-matrix code paths want.
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) { return data_[i + j * rows_]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i + j * rows_]; }

    T* col(std::size_t j) { return data_.data() + j * rows_; }
    const T* col(std::size_t j) const { return data_.data() + j * rows_; }
    std::span<T> col_span(std::size_t j) { return {col(j), rows_}; }
    std::span<const T> col_span(std::size_t j) const { return {col(j), rows_}; }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    std::vector<T> col_copy(std::size_t j) const {
        return std::vector<T>(col(j), col(j) + rows_);
    }

    void set_col(std::size_t j, std::span<const T> v) {
        if (v.size() != rows_) throw std::invalid_argument("set_col: length mismatch");
        std::copy(v.begin(), v.end(), col(j));
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

inline double conj_if(double x) { return x; }
inline cplx conj_if(const cplx& x) { return std::conj(x); }

template <typename T>
Matrix<T> conjugate_transpose(const Matrix<T>& a) {
    Matrix<T> out(a.cols(), a.rows());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            out(j, i) = conj_if(a(i, j));
    return out;
}

/// C = A * B.
template <typename T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
    Matrix<T> c(a.rows(), b.cols());
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < b.cols(); ++j) {
        T* cj = c.col(j);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T bkj = b(k, j);
            if (bkj == T{}) continue;
            const T* ak = a.col(k);
            for (std::size_t i = 0; i < n; ++i) cj[i] += ak[i] * bkj;
        }
    }
    return c;
}

/// A^H * B without forming the transpose.
template <typename T>
Matrix<T> adjoint_multiply(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("adjoint_multiply: shape mismatch");
    Matrix<T> c(a.cols(), b.cols());
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < b.cols(); ++j) {
        const T* bj = b.col(j);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T* ak = a.col(k);
            T s{};
            for (std::size_t i = 0; i < n; ++i) s += conj_if(ak[i]) * bj[i];
            c(k, j) = s;
        }
    }
    return c;
}

/// Gram matrix A^H A (Hermitian by construction, both triangles filled).
template <typename T>
Matrix<T> gram(const Matrix<T>& a) {
    Matrix<T> g(a.cols(), a.cols());
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < a.cols(); ++j) {
        const T* aj = a.col(j);
        for (std::size_t k = 0; k <= j; ++k) {
            const T* ak = a.col(k);
            T s{};
            for (std::size_t i = 0; i < n; ++i) s += conj_if(ak[i]) * aj[i];
            g(k, j) = s;
            g(j, k) = conj_if(s);
        }
    }
    return g;
}

template <typename T>
std::vector<T> matvec(const Matrix<T>& a, std::span<const T> x) {
    if (x.size() != a.cols()) throw std::invalid_argument("matvec: shape mismatch");
    std::vector<T> y(a.rows(), T{});
    for (std::size_t k = 0; k < a.cols(); ++k) {
        const T xk = x[k];
        if (xk == T{}) continue;
        const T* ak = a.col(k);
        for (std::size_t i = 0; i < a.rows(); ++i) y[i] += ak[i] * xk;
    }
    return y;
}

template <typename T>
std::vector<T> adjoint_matvec(const Matrix<T>& a, std::span<const T> x) {
    if (x.size() != a.rows()) throw std::invalid_argument("adjoint_matvec: shape mismatch");
    std::vector<T> y(a.cols(), T{});
    for (std::size_t k = 0; k < a.cols(); ++k) {
        const T* ak = a.col(k);
        T s{};
        for (std::size_t i = 0; i < a.rows(); ++i) s += conj_if(ak[i]) * x[i];
        y[k] = s;
    }
    return y;
}

template <typename T>
T inner(std::span<const T> x, std::span<const T> y) {
    if (x.size() != y.size()) throw std::invalid_argument("inner: length mismatch");
    T s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += conj_if(x[i]) * y[i];
    return s;
}

template <typename T>
double norm2(std::span<const T> x) {
    double s = 0;
    for (const auto& v : x) s += std::norm(cplx(v));
    return std::sqrt(s);
}

template <typename T>
double max_abs(const Matrix<T>& a) {
    double m = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            m = std::max(m, std::abs(a(i, j)));
    return m;
}

/// Max entrywise deviation from the identity.
template <typename T>
double max_dev_from_identity(const Matrix<T>& a) {
    double m = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const cplx d = cplx(a(i, j)) - (i == j ? cplx(1) : cplx(0));
            m = std::max(m, std::abs(d));
        }
    return m;
}

template <typename T>
double hermitian_deviation(const Matrix<T>& a) {
    double m = 0;
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i <= j; ++i)
            m = std::max(m, std::abs(cplx(a(i, j)) - cplx(conj_if(a(j, i)))));
    return m;
}

/// (A + A^H) / 2.
template <typename T>
Matrix<T> symmetrized(const Matrix<T>& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("symmetrized: matrix must be square");
    Matrix<T> out(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            out(i, j) = (a(i, j) + conj_if(a(j, i))) / 2.0;
    return out;
}

/// Square matrix stored with A = A^H exactly; the constructor symmetrizes.
template <typename T>
class HermitianMatrix {
public:
    explicit HermitianMatrix(const Matrix<T>& a) : m_(symmetrized(a)) {}
    const Matrix<T>& matrix() const { return m_; }
    std::size_t order() const { return m_.rows(); }

private:
    Matrix<T> m_;
};

template <typename T>
Matrix<cplx> to_complex(const Matrix<T>& a) {
    Matrix<cplx> out(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            out(i, j) = cplx(a(i, j));
    return out;
}

inline Matrix<cplx> to_complex(const Matrix<cplx>& a) { return a; }

}  // namespace graphlim
