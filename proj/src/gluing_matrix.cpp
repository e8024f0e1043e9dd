#include "torusbundle/gluing_matrix.hpp"

#include <sstream>

namespace torusbundle {

GluingMatrix::GluingMatrix(Int alpha, Int gamma, Int beta, Int delta)
    : alpha_(alpha), gamma_(gamma), beta_(beta), delta_(delta) {
    det_ = checked_sub(checked_mul(alpha_, delta_), checked_mul(beta_, gamma_));
    if (det_ != 1 && det_ != -1) {
        std::ostringstream os;
        os << "gluing matrix must have determinant +1 or -1, got " << det_;
        throw InvalidMatrixError(os.str());
    }
    // [[m1, m2], [n1, n2]] = -theta^-1 = (1/det) [[-delta, gamma], [beta, -alpha]],
    // and 1/det = det for det = +-1.
    m1_ = checked_mul(checked_neg(delta_), det_);
    m2_ = checked_mul(gamma_, det_);
    n1_ = checked_mul(beta_, det_);
    n2_ = checked_mul(checked_neg(alpha_), det_);
}

namespace {

using Mat2 = std::array<Int, 4>;  // row-major a b / c d

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
    return {checked_add(checked_mul(x[0], y[0]), checked_mul(x[1], y[2])),
            checked_add(checked_mul(x[0], y[1]), checked_mul(x[1], y[3])),
            checked_add(checked_mul(x[2], y[0]), checked_mul(x[3], y[2])),
            checked_add(checked_mul(x[2], y[1]), checked_mul(x[3], y[3]))};
}

Mat2 mat_pow(Mat2 base, Int e) {
    Mat2 acc = {1, 0, 0, 1};
    while (e > 0) {
        if (e & 1) acc = mat_mul(acc, base);
        base = mat_mul(base, base);
        e >>= 1;
    }
    return acc;
}

}  // namespace

std::pair<Int, Int> GluingMatrix::power_apply(Int k, std::pair<Int, Int> v) const {
    Mat2 base;
    if (k >= 0) {
        base = {alpha_, gamma_, beta_, delta_};
    } else {
        // theta^-1 via the adjugate: exact because det = +-1.
        base = {checked_mul(delta_, det_), checked_mul(checked_neg(gamma_), det_),
                checked_mul(checked_neg(beta_), det_), checked_mul(alpha_, det_)};
        k = checked_neg(k);
    }
    Mat2 m = mat_pow(base, k);
    return {checked_add(checked_mul(m[0], v.first), checked_mul(m[1], v.second)),
            checked_add(checked_mul(m[2], v.first), checked_mul(m[3], v.second))};
}

std::pair<Int, Int> GluingMatrix::inverse_apply(std::pair<Int, Int> v) const {
    return power_apply(-1, v);
}

int GluingMatrix::rank_minus_identity() const {
    Int a = checked_sub(alpha_, 1);
    Int b = gamma_;
    Int c = beta_;
    Int d = checked_sub(delta_, 1);
    Int dd = checked_sub(checked_mul(a, d), checked_mul(b, c));
    if (dd != 0) return 2;
    if (a == 0 && b == 0 && c == 0 && d == 0) return 0;
    return 1;
}

int GluingMatrix::rank_minus_identity_mod(Int p) const {
    Int a = mod_floor(alpha_ - 1, p);
    Int b = mod_floor(gamma_, p);
    Int c = mod_floor(beta_, p);
    Int d = mod_floor(delta_ - 1, p);
    if (mod_floor(a * d - b * c, p) != 0) return 2;
    if (a == 0 && b == 0 && c == 0 && d == 0) return 0;
    return 1;
}

std::string GluingMatrix::to_string() const {
    std::ostringstream os;
    os << "[[" << alpha_ << ", " << gamma_ << "], [" << beta_ << ", " << delta_ << "]]";
    return os.str();
}

}  // namespace torusbundle
