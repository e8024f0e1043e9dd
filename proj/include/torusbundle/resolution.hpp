#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>

#include "torusbundle/group_ring.hpp"

namespace torusbundle {

/// A closed integer interval [lo, hi]; lo > hi means the empty set.
struct Interval {
    Int lo = 0;
    Int hi = -1;

    static Interval empty() { return {0, -1}; }
    static Interval single(Int v) { return {v, v}; }

    bool is_empty() const { return lo > hi; }
    Int count() const { return is_empty() ? 0 : checked_add(checked_sub(hi, lo), 1); }
    /// Sum of the integers in the interval.
    Int sum() const {
        if (is_empty()) return 0;
        return exact_half(checked_mul(checked_add(lo, hi), count()));
    }
    bool operator==(const Interval&) const = default;
};

/// The four intervals that carve out the support of E in grid coordinates.
struct IndexSets {
    Interval I1, J1, I2, J2;

    /// |I1 x J1| - |I2 x J2|; always equals det(theta) for a valid lookup.
    Int cardinality_difference() const {
        return checked_sub(checked_mul(I1.count(), J1.count()),
                           checked_mul(I2.count(), J2.count()));
    }
};

struct IndexSetLookup {
    IndexSets sets;
    int row = 0;  // 1-based row id in the table
};

/// Select the table row matching the signs/values of (m1, n1, m2, n2) and
/// the tie-break conditions.  Throws NoMatchingRowError when no row applies
/// (equality ties the table does not cover); callers fall back to
/// solve_e_lattice.
IndexSetLookup lookup_index_sets(const GluingMatrix& theta);

/// Number of rows in the index-set table.
int index_table_row_count();

/// The four coefficient elements of the middle differential.
struct AbcdElements {
    GroupRingElement A, B, C, D;
};

AbcdElements build_abcd(const GluingMatrix& theta);

/// Both lines of the defining identity for E:
///   E (1 - b) = (b - 1) A + (1 - a) C
///   E (a - 1) = (b - 1) B + (1 - a) D
bool satisfies_e_identity(const GluingMatrix& theta, const GroupRingElement& e);

/// Assemble E from explicit index sets:
///   E = -(1,1) + sum over I1 x J1 of (a^(alpha m + gamma n) b^(beta m + delta n), t)
///              - sum over I2 x J2 of the same terms.
GroupRingElement assemble_e(const GluingMatrix& theta, const IndexSets& sets);

/// Finitely supported integer labels on the grid plane (theta^-1-coordinates
/// of the t-level support of E).
using LatticeLabels = std::map<std::pair<Int, Int>, Int>;

/// Independent oracle: solve the two difference equations for the labels of
/// E directly.  Works in transformed coordinates where both steps are
/// axis-aligned, integrates the vertical equation column by column, and
/// verifies the result against the defining identity.  Self-verifying.
GroupRingElement solve_e_lattice(const GluingMatrix& theta);

/// Labels of the lattice solution (support of E - (-(1,1)) in grid coordinates).
LatticeLabels solve_e_labels(const GluingMatrix& theta);

struct BuildEResult {
    GroupRingElement e;
    bool used_lattice_fallback = false;
    std::optional<IndexSetLookup> lookup;  // set when the table path was taken
};

/// Table-first construction of E with verification; falls back to the
/// lattice solver on NoMatchingRowError.  Throws EVerificationError if a
/// table-built E fails the defining identity.
BuildEResult build_e(const GluingMatrix& theta);

/// The free resolution
///   0 -> P3 -> P2 -> P1 -> P0 -> Z -> 0
/// over the ordered bases (w), (z1,z2,z3), (y1,y2,y3), (x).  All chain
/// identities are verified before an instance is handed out.
class Resolution {
public:
    static Resolution build(const GluingMatrix& theta);

    const GluingMatrix& theta() const { return theta_; }
    const GroupRingElement& A() const { return abcd_.A; }
    const GroupRingElement& B() const { return abcd_.B; }
    const GroupRingElement& C() const { return abcd_.C; }
    const GroupRingElement& D() const { return abcd_.D; }
    const GroupRingElement& E() const { return e_; }

    /// d1[j] = coefficient of x in the boundary of y_j.
    const std::array<GroupRingElement, 3>& d1() const { return d1_; }
    /// d2[i][j] = coefficient of y_j in the boundary of z_i.
    const std::array<std::array<GroupRingElement, 3>, 3>& d2() const { return d2_; }
    /// d3[i] = coefficient of z_i in the boundary of w.
    const std::array<GroupRingElement, 3>& d3() const { return d3_; }

    bool e_from_lattice_fallback() const { return e_fallback_; }
    const std::optional<IndexSetLookup>& index_sets() const { return lookup_; }

private:
    explicit Resolution(const GluingMatrix& theta);
    void verify() const;

    GluingMatrix theta_;
    AbcdElements abcd_;
    GroupRingElement e_;
    std::array<GroupRingElement, 3> d1_;
    std::array<std::array<GroupRingElement, 3>, 3> d2_;
    std::array<GroupRingElement, 3> d3_;
    bool e_fallback_ = false;
    std::optional<IndexSetLookup> lookup_;
};

}  // namespace torusbundle
