#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "torusbundle/matrix.hpp"
#include "torusbundle/resolution.hpp"

namespace torusbundle {

/// Trivial coefficients: the integers, or Z_p for a prime p (p = 2 allowed).
struct CoefficientRing {
    enum class Kind { Integers, ModP };
    Kind kind = Kind::Integers;
    Int p = 0;

    static CoefficientRing integers() { return {Kind::Integers, 0}; }
    static CoefficientRing mod(Int p);

    bool is_modular() const { return kind == Kind::ModP; }
    bool operator==(const CoefficientRing&) const = default;
    std::string name() const;  // "Z", "Z2", "Z5", ...

    /// Parse "Z", "Z2", "Z7"..., or "Zp" with an explicit prime.
    static CoefficientRing parse(const std::string& token, std::optional<Int> p = std::nullopt);
};

/// A cochain in one degree, as integer coordinates in the dual basis
/// (x*), (y1*, y2*, y3*), (z1*, z2*, z3*), (w*).
struct Cochain {
    int degree = 0;
    std::vector<Int> coords;
    CoefficientRing ring;

    static Cochain dual_basis(int degree, int index, CoefficientRing ring);
    std::string to_string() const;
};

/// A finitely generated abelian group as an invariant-factor list (0 for a
/// free summand, d > 1 for Z_d, chained by divisibility) plus one explicit
/// generator cochain per factor.
struct AbelianGroupPresentation {
    std::vector<Int> invariant_factors;
    std::vector<Cochain> generators;

    int free_rank() const;
    bool is_trivial() const { return invariant_factors.empty(); }
    std::string group_name() const;  // "Z^2", "Z_2 + Z", "0", ...
};

/// The dual complex matrices obtained by applying the augmentation to the
/// differentials entrywise (reduced mod p for modular coefficients):
///   d1_dual: 3x1 (always zero), d2_dual: 3x3, d3_dual: 1x3.
struct DualMatrices {
    IntMatrix d1_dual, d2_dual, d3_dual;
};

DualMatrices dual_matrices(const Resolution& res, CoefficientRing ring);

/// Cohomology in one degree, with the quotient structure retained so that
/// arbitrary cocycles can be reduced to canonical class coordinates.
class CohomologyDegree {
public:
    /// Integer coefficients.  `outgoing` and `incoming` are the dual
    /// matrices out of and into this degree; `basis_override` replaces the
    /// kernel basis (it must span the same saturated lattice).
    static CohomologyDegree over_integers(int degree, const IntMatrix& outgoing,
                                          const IntMatrix& incoming, CoefficientRing ring,
                                          const std::optional<IntMatrix>& basis_override = {});
    static CohomologyDegree over_modp(int degree, const IntMatrix& outgoing,
                                      const IntMatrix& incoming, CoefficientRing ring);

    const AbelianGroupPresentation& group() const { return pres_; }
    CoefficientRing ring() const { return ring_; }
    int degree() const { return degree_; }
    int module_dim() const { return n_; }

    bool is_cocycle(const std::vector<Int>& coords) const;
    /// Canonical class coordinates, one per invariant factor (torsion
    /// reduced into [0, d), free coordinates exact).
    std::vector<Int> class_coords(const std::vector<Int>& coords) const;
    bool is_zero_class(const std::vector<Int>& coords) const;
    /// Order of the class: 0 for infinite order, 1 for the zero class.
    Int class_order(const std::vector<Int>& coords) const;

private:
    CoefficientRing ring_;
    int degree_ = 0;
    int n_ = 0;  // dimension of the cochain module
    IntMatrix outgoing_;
    // integer path
    IntMatrix kernel_coords_;    // left inverse of the kernel basis
    IntMatrix class_transform_;  // factor decomposition on kernel coordinates
    std::vector<Int> factors_all_;
    std::vector<int> kept_;  // indices of the nontrivial factors
    // mod-p path
    IntMatrix modp_solve_;  // [image basis | generators], full column rank
    int modp_image_dim_ = 0;

    AbelianGroupPresentation pres_;

    std::vector<Int> canonical_from_kernel_coords(const std::vector<Int>& y) const;
};

/// All four cohomology degrees of one gluing matrix over one ring, computed
/// from the dual complex by exact elimination (never from closed forms).
class Cohomology {
public:
    static Cohomology compute(const Resolution& res, CoefficientRing ring);

    const CohomologyDegree& degree(int k) const { return degrees_.at(k); }
    CoefficientRing ring() const { return ring_; }
    std::array<AbelianGroupPresentation, 4> groups() const;

private:
    CoefficientRing ring_;
    std::vector<CohomologyDegree> degrees_;
};

/// Data extracted from the rank-1 factorization of I - theta^-1 =
/// [[q r', p r'], [q s', p s']] with gcd(p, q) = 1, plus the Bezout pair
/// p k + q ell = 1 under a fixed canonical choice (|k| minimal, k >= 0 on
/// ties; k = p, ell = 0 when q = 0).
struct Rank1Data {
    Int p = 0, q = 0;
    Int r_prime = 0, s_prime = 0;
    Int k = 0, ell = 0;
    std::optional<Int> r_doubleprime;  // det = +1: r' = p r'', s' = -q r''
    std::optional<Int> m;              // det = -1: s' = 2k - q m, r' = 2 ell + p m
    std::optional<Int> m_prime;        // m / 2 when m is even
};

/// One of the six integral classification cases, keyed by
/// (rank(theta - I), det theta, gcd(beta, gamma, 2)).
struct DerivationData {
    int case_index = 0;  // 1..6
    int rank = 0;
    Int det = 0;
    std::optional<Rank1Data> rank1;

    std::string case_description() const;
};

DerivationData derive_presentation_data(const GluingMatrix& theta);

}  // namespace torusbundle
