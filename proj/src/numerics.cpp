#include "smi/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smi/errors.hpp"

namespace smi {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
    if (rows.empty()) throw InputError("Matrix::from_rows: empty row list");
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_)
            throw InputError("Matrix::from_rows: ragged rows");
        m.set_row(r, rows[r]);
    }
    return m;
}

Vector Matrix::row(std::size_t r) const {
    Vector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
    return v;
}

void Matrix::set_row(std::size_t r, const Vector& v) {
    if (v.size() != cols_) throw InputError("Matrix::set_row: length mismatch");
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = v[c];
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

void Matrix::check_finite(const char* context) const {
    for (double x : data_)
        if (!std::isfinite(x))
            throw InputError(std::string(context) + ": non-finite matrix entry");
}

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InputError("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

double norm_inf(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

Vector operator+(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InputError("vector +: length mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector operator-(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw InputError("vector -: length mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vector operator*(double s, const Vector& v) {
    Vector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

Vector matvec(const Matrix& m, const Vector& v) {
    if (m.cols() != v.size()) throw InputError("matvec: dimension mismatch");
    Vector r(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

void check_finite(const Vector& v, const char* context) {
    for (double x : v)
        if (!std::isfinite(x))
            throw InputError(std::string(context) + ": non-finite vector entry");
}

std::optional<Vector> linsolve(const Matrix& a, const Vector& b) {
    if (a.rows() != a.cols()) throw InputError("linsolve: matrix not square");
    if (a.rows() != b.size()) throw InputError("linsolve: rhs length mismatch");
    const std::size_t n = a.rows();
    Matrix m = a;
    Vector x = b;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(m(r, col)) > std::fabs(m(piv, col))) piv = r;
        if (std::fabs(m(piv, col)) <= kPivotTol) return std::nullopt;
        if (piv != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(m(piv, c), m(col, c));
            std::swap(x[piv], x[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = m(r, col) / m(col, col);
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
            x[r] -= f * x[col];
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        double s = x[col];
        for (std::size_t c = col + 1; c < n; ++c) s -= m(col, c) * x[c];
        x[col] = s / m(col, col);
    }
    return x;
}

namespace {

// One full cyclic sweep of Jacobi rotations; returns sum of |off-diagonal|.
double jacobi_sweep(Matrix& s) {
    const std::size_t n = s.rows();
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const double apq = s(p, q);
            if (apq == 0.0) continue;
            const double app = s(p, p), aqq = s(q, q);
            const double tau = (aqq - app) / (2.0 * apq);
            const double t = (tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                         : 1.0 / (tau - std::sqrt(1.0 + tau * tau)));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double sn = t * c;
            for (std::size_t k = 0; k < n; ++k) {
                const double akp = s(k, p), akq = s(k, q);
                s(k, p) = c * akp - sn * akq;
                s(k, q) = sn * akp + c * akq;
            }
            for (std::size_t k = 0; k < n; ++k) {
                const double apk = s(p, k), aqk = s(q, k);
                s(p, k) = c * apk - sn * aqk;
                s(q, k) = sn * apk + c * aqk;
            }
        }
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) off += std::fabs(s(p, q));
    return off;
}

Matrix symmetrize_checked(const Matrix& s) {
    if (s.rows() != s.cols()) throw InputError("sym_eig: matrix not square");
    s.check_finite("sym_eig");
    double scale = 0.0;
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) scale = std::max(scale, std::fabs(s(i, j)));
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = i + 1; j < s.cols(); ++j)
            if (std::fabs(s(i, j) - s(j, i)) > 1e-10 * std::max(1.0, scale))
                throw InputError("sym_eig: matrix not symmetric within tolerance");
    Matrix a = s;
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) a(i, j) = 0.5 * (s(i, j) + s(j, i));
    return a;
}

}  // namespace

Vector sym_eig_all(const Matrix& s) {
    Matrix a = symmetrize_checked(s);
    const std::size_t n = a.rows();
    if (n == 0) throw InputError("sym_eig: empty matrix");
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a(i, j)));
    const double tol = 1e-14 * std::max(1.0, scale) * static_cast<double>(n * n);
    for (int sweep = 0; sweep < 64; ++sweep) {
        if (jacobi_sweep(a) <= tol) break;
    }
    Vector eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

double sym_eig_min(const Matrix& s) { return sym_eig_all(s).front(); }

}  // namespace smi
