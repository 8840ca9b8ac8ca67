#ifndef FLOPGW_MATRIX_HPP
#define FLOPGW_MATRIX_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "flopgw/rational.hpp"

namespace flopgw {

// Small dense matrix over QQ; exact arithmetic only.
class QMat {
public:
    QMat() : rows_(0), cols_(0) {}
    QMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, QQ(0)) {}

    static QMat identity(int n)
    {
        QMat m(n, n);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    QQ& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const QQ& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    friend QMat operator*(const QMat& x, const QMat& y)
    {
        if (x.cols_ != y.rows_)
            throw std::invalid_argument("QMat: shape mismatch in product");
        QMat out(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const QQ& v = x.at(i, k);
                if (v == 0)
                    continue;
                for (int j = 0; j < y.cols_; ++j)
                    out.at(i, j) += v * y.at(k, j);
            }
        return out;
    }

    friend bool operator==(const QMat& x, const QMat& y)
    {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    QMat transposed() const
    {
        QMat out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                out.at(j, i) = at(i, j);
        return out;
    }

    // Exact inverse by Gauss-Jordan; throws on a singular input.
    QMat inverse() const
    {
        if (rows_ != cols_)
            throw std::invalid_argument("QMat: inverse of non-square matrix");
        const int n = rows_;
        QMat work(*this);
        QMat inv = identity(n);
        for (int col = 0; col < n; ++col) {
            int pivot = -1;
            for (int row = col; row < n; ++row)
                if (work.at(row, col) != 0) {
                    pivot = row;
                    break;
                }
            if (pivot < 0)
                throw std::runtime_error("QMat: singular matrix");
            if (pivot != col)
                for (int j = 0; j < n; ++j) {
                    std::swap(work.at(pivot, j), work.at(col, j));
                    std::swap(inv.at(pivot, j), inv.at(col, j));
                }
            const QQ scale = QQ(1) / work.at(col, col);
            for (int j = 0; j < n; ++j) {
                work.at(col, j) *= scale;
                inv.at(col, j) *= scale;
            }
            for (int row = 0; row < n; ++row) {
                if (row == col || work.at(row, col) == 0)
                    continue;
                const QQ f = work.at(row, col);
                for (int j = 0; j < n; ++j) {
                    work.at(row, j) -= f * work.at(col, j);
                    inv.at(row, j) -= f * inv.at(col, j);
                }
            }
        }
        return inv;
    }

private:
    int rows_, cols_;
    std::vector<QQ> a_;
};

// Solves A x = b exactly. Returns a particular solution with free variables
// set to zero, or nullopt when the system is inconsistent.
inline std::optional<std::vector<QQ>> solve_linear(QMat a, std::vector<QQ> b)
{
    const int m = a.rows();
    const int n = a.cols();
    std::vector<int> pivot_col_of_row(m, -1);
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        int pr = -1;
        for (int r = row; r < m; ++r)
            if (a.at(r, col) != 0) {
                pr = r;
                break;
            }
        if (pr < 0)
            continue;
        if (pr != row) {
            for (int j = 0; j < n; ++j)
                std::swap(a.at(pr, j), a.at(row, j));
            std::swap(b[pr], b[row]);
        }
        const QQ scale = QQ(1) / a.at(row, col);
        for (int j = 0; j < n; ++j)
            a.at(row, j) *= scale;
        b[row] *= scale;
        for (int r = 0; r < m; ++r) {
            if (r == row || a.at(r, col) == 0)
                continue;
            const QQ f = a.at(r, col);
            for (int j = 0; j < n; ++j)
                a.at(r, j) -= f * a.at(row, j);
            b[r] -= f * b[row];
        }
        pivot_col_of_row[row] = col;
        ++row;
    }
    for (int r = row; r < m; ++r)
        if (b[r] != 0)
            return std::nullopt;
    std::vector<QQ> x(n, QQ(0));
    for (int r = 0; r < row; ++r)
        x[static_cast<size_t>(pivot_col_of_row[r])] = b[r];
    return x;
}

} // namespace flopgw

#endif
