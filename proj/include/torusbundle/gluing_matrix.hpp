#pragma once

#include <array>
#include <string>
#include <utility>

#include "torusbundle/ints.hpp"

namespace torusbundle {

/// The gluing matrix theta = [[alpha, gamma], [beta, delta]] of a torus
/// bundle, with det = +-1.  The action on the fiber group <a, b> is
/// t a t^-1 = a^alpha b^beta and t b t^-1 = a^gamma b^delta.
///
/// Also carries the derived quadruple (m1, n1, m2, n2), the entries of
/// -theta^-1 laid out as [[m1, m2], [n1, n2]].  Every downstream formula is
/// phrased in these four integers.
class GluingMatrix {
public:
    /// Entries in row-major order: alpha, gamma / beta, delta.
    GluingMatrix(Int alpha, Int gamma, Int beta, Int delta);

    Int alpha() const { return alpha_; }
    Int gamma() const { return gamma_; }
    Int beta() const { return beta_; }
    Int delta() const { return delta_; }
    Int det() const { return det_; }

    Int m1() const { return m1_; }
    Int n1() const { return n1_; }
    Int m2() const { return m2_; }
    Int n2() const { return n2_; }

    /// theta^k applied to a column vector, exact for any sign of k.
    std::pair<Int, Int> power_apply(Int k, std::pair<Int, Int> v) const;

    /// theta^-1 applied to a column vector (integral because det = +-1).
    std::pair<Int, Int> inverse_apply(std::pair<Int, Int> v) const;

    /// Rank of theta - I over the rationals (0, 1 or 2).
    int rank_minus_identity() const;

    /// Rank of theta - I over Z_p.
    int rank_minus_identity_mod(Int p) const;

    bool operator==(const GluingMatrix& o) const {
        return alpha_ == o.alpha_ && gamma_ == o.gamma_ && beta_ == o.beta_ && delta_ == o.delta_;
    }

    std::string to_string() const;

private:
    Int alpha_, gamma_, beta_, delta_;
    Int det_;
    Int m1_, n1_, m2_, n2_;
};

}  // namespace torusbundle
