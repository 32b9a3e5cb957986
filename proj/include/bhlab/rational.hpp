#pragma once

// Exact rational scalars, vectors and small dense matrices.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bhlab {

using Rational = mpq_class;
using Integer = mpz_class;

using IntVec = std::vector<std::int64_t>;
using RatVec = std::vector<Rational>;

inline std::string to_string(const Rational &q)
{
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rational parse_rational(const std::string &s)
{
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

/// a/b in lowest terms.
inline Rational ratio(long a, long b)
{
    Rational q(a, b);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational &q) { return q.get_den() == 1; }

inline Integer floor_of(const Rational &q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

/// Fractional part in [0, 1).
inline Rational frac_of(const Rational &q) { return q - Rational(floor_of(q)); }

inline std::int64_t to_i64(const Integer &z)
{
    if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit 64 bits");
    return z.get_si();
}

/// Rising factorial a(a+1)...(a+k-1).
inline Rational pochhammer(const Rational &a, std::int64_t k)
{
    Rational r = 1;
    for (std::int64_t j = 0; j < k; ++j) r *= a + j;
    return r;
}

// Small dense matrix. Row-major; a 0x0 matrix is a valid value.
template <typename T>
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const Matrix &a, const Matrix &b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using RatMatrix = Matrix<Rational>;

template <typename T>
Matrix<T> operator*(const Matrix<T> &a, const Matrix<T> &b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

inline RatMatrix to_rational(const IntMatrix &m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(static_cast<long>(m(i, j)));
    return r;
}

/// Row vector times matrix: (v M)_j = sum_i v_i M_ij.
template <typename V>
RatVec row_times(const V &v, const RatMatrix &m)
{
    RatVec out(m.cols(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0) continue;
        Rational vi(v[i]);
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += vi * m(i, j);
    }
    return out;
}

/// Determinant and inverse by Gauss-Jordan. Returns false when singular.
inline bool invert(const RatMatrix &m, RatMatrix &inverse, Rational &det)
{
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("invert: non-square");
    RatMatrix a = m;
    inverse = RatMatrix::identity(n);
    det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c) == 0) ++piv;
        if (piv == n) {
            det = 0;
            return false;
        }
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(c, j));
                std::swap(inverse(piv, j), inverse(c, j));
            }
            det = -det;
        }
        Rational p = a(c, c);
        det *= p;
        for (std::size_t j = 0; j < n; ++j) {
            a(c, j) /= p;
            inverse(c, j) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0) continue;
            Rational f = a(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inverse(r, j) -= f * inverse(c, j);
            }
        }
    }
    return true;
}

} // namespace bhlab
