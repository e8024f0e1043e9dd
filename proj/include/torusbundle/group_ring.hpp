#pragma once

#include <compare>
#include <map>
#include <string>

#include "torusbundle/gluing_matrix.hpp"

namespace torusbundle {

/// An element (a^m b^n, t^k) of G = (Z + Z) x|_theta Z in its normal form.
/// (0, 0, 0) is the identity.
struct GroupElement {
    Int m = 0;
    Int n = 0;
    Int k = 0;

    auto operator<=>(const GroupElement&) const = default;
};

/// A finitely supported integer combination of group elements.  Terms are
/// kept in canonical sorted form with no zero coefficients, so equality is
/// structural equality.
class GroupRingElement {
public:
    GroupRingElement() = default;

    static GroupRingElement zero() { return {}; }
    static GroupRingElement one() { return term({0, 0, 0}, 1); }
    static GroupRingElement term(GroupElement g, Int coeff = 1);

    const std::map<GroupElement, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Int coeff(GroupElement g) const;

    void add_term(GroupElement g, Int coeff);

    GroupRingElement operator+(const GroupRingElement& o) const;
    GroupRingElement operator-(const GroupRingElement& o) const;
    GroupRingElement operator-() const;
    GroupRingElement scaled(Int c) const;

    bool operator==(const GroupRingElement&) const = default;

    std::string to_string() const;

private:
    std::map<GroupElement, Int> terms_;
};

/// Semidirect multiplication: (m,n,k) * (m',n',k') = ((m,n) + theta^k (m',n'), k + k').
GroupElement mul_elements(const GluingMatrix& theta, GroupElement g, GroupElement h);

/// g^-1 = (-theta^-k (m,n), -k).
GroupElement inverse_element(const GluingMatrix& theta, GroupElement g);

/// Bilinear extension of mul_elements to the group ring.
GroupRingElement ring_mul(const GluingMatrix& theta, const GroupRingElement& x,
                          const GroupRingElement& y);

/// The ring map ZG -> Z sending every group element to 1.
Int augmentation(const GroupRingElement& x);

enum class Axis { A, B };

/// Derivative of a power along one fiber axis: the geometric sum
///   1 + a + ... + a^(e-1)          for e > 0,
///   -(a^-1 + ... + a^e)            for e < 0,
///   0                              for e = 0,
/// all at t-level 0 (and symmetrically for axis B).  Satisfies the
/// telescoping identity  fox_power(e) * (a - 1) = a^e - 1.
GroupRingElement fox_power(Int exponent, Axis axis);

}  // namespace torusbundle
