#include "torusbundle/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace torusbundle {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> init) {
    rows_ = static_cast<int>(init.size());
    cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
    a_.reserve(std::size_t(rows_) * cols_);
    for (const auto& row : init) {
        for (Int v : row) a_.push_back(v);
    }
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            Int v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                r.at(i, j) = checked_add(r.at(i, j), checked_mul(v, o.at(k, j)));
        }
    return r;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& v) const {
    std::vector<Int> r(rows_, 0);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r[i] = checked_add(r[i], checked_mul(at(i, j), v[j]));
    return r;
}

void IntMatrix::swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void IntMatrix::scale_row(int i, Int c) {
    for (int j = 0; j < cols_; ++j) at(i, j) = checked_mul(at(i, j), c);
}

void IntMatrix::scale_col(int j, Int c) {
    for (int i = 0; i < rows_; ++i) at(i, j) = checked_mul(at(i, j), c);
}

void IntMatrix::add_row_multiple(int dst, int src, Int c) {
    if (c == 0) return;
    for (int j = 0; j < cols_; ++j)
        at(dst, j) = checked_add(at(dst, j), checked_mul(c, at(src, j)));
}

void IntMatrix::add_col_multiple(int dst, int src, Int c) {
    if (c == 0) return;
    for (int i = 0; i < rows_; ++i)
        at(i, dst) = checked_add(at(i, dst), checked_mul(c, at(i, src)));
}

IntMatrix IntMatrix::submatrix_rows(int from) const {
    IntMatrix r(rows_ - from, cols_);
    for (int i = from; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i - from, j) = at(i, j);
    return r;
}

IntMatrix IntMatrix::columns(int from, int to) const {
    IntMatrix r(rows_, to - from);
    for (int i = 0; i < rows_; ++i)
        for (int j = from; j < to; ++j) r.at(i, j - from) = at(i, j);
    return r;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](Int v) { return v == 0; });
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

// Row/column operations with the inverse transformations mirrored, so that
// U * M0 * V = D stays true at every step and Uinv, Vinv stay exact inverses.
struct SnfState {
    IntMatrix D, U, Uinv, V, Vinv;

    void row_swap(int i, int j) {
        D.swap_rows(i, j);
        U.swap_rows(i, j);
        Uinv.swap_cols(i, j);
    }
    void col_swap(int i, int j) {
        D.swap_cols(i, j);
        V.swap_cols(i, j);
        Vinv.swap_rows(i, j);
    }
    void row_add(int dst, int src, Int c) {  // row dst += c * row src
        D.add_row_multiple(dst, src, c);
        U.add_row_multiple(dst, src, c);
        Uinv.add_col_multiple(src, dst, checked_neg(c));
    }
    void col_add(int dst, int src, Int c) {
        D.add_col_multiple(dst, src, c);
        V.add_col_multiple(dst, src, c);
        Vinv.add_row_multiple(src, dst, checked_neg(c));
    }
    void row_negate(int i) {
        D.scale_row(i, -1);
        U.scale_row(i, -1);
        Uinv.scale_col(i, -1);
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    const int r = m.rows(), c = m.cols();
    SnfState st{m, IntMatrix::identity(r), IntMatrix::identity(r), IntMatrix::identity(c),
                IntMatrix::identity(c)};

    const int nmin = std::min(r, c);
    int s = 0;
    for (; s < nmin; ++s) {
        // Least-absolute-value pivot in the trailing submatrix.
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = s; i < r; ++i)
            for (int j = s; j < c; ++j) {
                Int v = checked_abs(st.D.at(i, j));
                if (v != 0 && (pi < 0 || v < best)) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // trailing submatrix is zero
        st.row_swap(s, pi);
        st.col_swap(s, pj);

        for (;;) {
            bool clean = true;
            for (int i = s + 1; i < r; ++i) {
                if (st.D.at(i, s) == 0) continue;
                Int q = st.D.at(i, s) / st.D.at(s, s);
                st.row_add(i, s, checked_neg(q));
                if (st.D.at(i, s) != 0) {  // remainder is a smaller pivot
                    st.row_swap(s, i);
                    clean = false;
                }
            }
            for (int j = s + 1; j < c; ++j) {
                if (st.D.at(s, j) == 0) continue;
                Int q = st.D.at(s, j) / st.D.at(s, s);
                st.col_add(j, s, checked_neg(q));
                if (st.D.at(s, j) != 0) {
                    st.col_swap(s, j);
                    clean = false;
                }
            }
            if (!clean) continue;

            // Pivot must divide every remaining entry for the chain d1 | d2 | ...
            bool divides = true;
            for (int i = s + 1; i < r && divides; ++i)
                for (int j = s + 1; j < c && divides; ++j)
                    if (st.D.at(i, j) % st.D.at(s, s) != 0) {
                        st.row_add(s, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
    }

    for (int i = 0; i < nmin; ++i)
        if (st.D.at(i, i) < 0) st.row_negate(i);

    SmithForm out{std::move(st.U), std::move(st.Uinv), std::move(st.D), std::move(st.V),
                  std::move(st.Vinv), s};
    return out;
}

}  // namespace torusbundle
