#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "torusbundle/ints.hpp"

namespace torusbundle {

/// Small dense integer matrix with checked arithmetic.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<Int>> init);

    static IntMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    Int at(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix transpose() const;
    bool operator==(const IntMatrix&) const = default;

    std::vector<Int> apply(const std::vector<Int>& v) const;  // matrix * column vector

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    void scale_row(int i, Int c);
    void scale_col(int j, Int c);
    void add_row_multiple(int dst, int src, Int c);  // row dst += c * row src
    void add_col_multiple(int dst, int src, Int c);

    IntMatrix submatrix_rows(int from) const;  // rows [from, rows)
    IntMatrix columns(int from, int to) const;  // cols [from, to)

    bool is_zero() const;
    std::string to_string() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

/// Smith normal form U * M * V = D with U, V unimodular and D diagonal,
/// nonnegative, each entry dividing the next.  Uinv and Vinv are the exact
/// inverses, accumulated alongside so lattice bases can be pulled through
/// the change of coordinates in both directions.
struct SmithForm {
    IntMatrix U, Uinv, D, V, Vinv;
    int rank = 0;

    Int diagonal(int i) const {
        return (i < D.rows() && i < D.cols()) ? D.at(i, i) : 0;
    }
};

/// Exact SNF by elementary operations, pivoting on least absolute value.
SmithForm smith_normal_form(const IntMatrix& m);

}  // namespace torusbundle
