#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace smi {

using Vector = std::vector<double>;

/// Dense row-major matrix. Dimensions are fixed at construction.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    void set_row(std::size_t r, const Vector& v);
    Matrix transposed() const;

    /// Throws InputError if any entry is NaN or infinite.
    void check_finite(const char* context) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double norm_inf(const Vector& v);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& v);
Vector matvec(const Matrix& m, const Vector& v);

void check_finite(const Vector& v, const char* context);

/// Solves Ax = b by Gaussian elimination with partial pivoting.
/// Returns nullopt when a pivot falls below the singularity threshold.
std::optional<Vector> linsolve(const Matrix& a, const Vector& b);

/// Smallest eigenvalue of a symmetric matrix via cyclic Jacobi rotations.
/// Inputs symmetric to 1e-10 are accepted and symmetrized by averaging.
double sym_eig_min(const Matrix& s);

/// All eigenvalues of a symmetric matrix, ascending.
Vector sym_eig_all(const Matrix& s);

inline constexpr double kPivotTol = 1e-11;

}  // namespace smi
