#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torusbundle/cohomology.hpp"

namespace torusbundle {

/// Integer structure constants of the cup product:
///   (u ~ v)(z_i) = sum_jk (M_i)_jk u(y_j) v(y_k)      for degree (1,1),
///   (u ~ v)(w)   = sum_jk N_jk  u(y_j) v(z_k)         for degree (1,2).
struct CupTables {
    IntMatrix M1{3, 3}, M2{3, 3}, M3{3, 3};
    IntMatrix N{3, 3};
};

/// The degree-(1,1) tables, transcribed exactly; all halved products are
/// integral (asserted at runtime).
void delta11_tables(const GluingMatrix& theta, IntMatrix& m1, IntMatrix& m2, IntMatrix& m3);

/// The degree-(1,2) table.  The two nontrivial coefficients are computed
/// from the simplified closed forms and cross-checked against the
/// unsimplified assembly through S and the homotopy augmentation sums.
IntMatrix delta12_table(const GluingMatrix& theta);

CupTables cup_tables(const GluingMatrix& theta);

/// S(x, y): the support of the top differential coefficient element E,
/// weighted by x u + y v over its grid coordinates.  Computed from the
/// index sets by direct summation when a table row applies, from the
/// lattice labels otherwise.
Int s_function(Int x, Int y, const GluingMatrix& theta);

/// Closed forms of S at (alpha, gamma) and (beta, delta), keyed by det.
Int s_closed_form_alpha_gamma(const GluingMatrix& theta);
Int s_closed_form_beta_delta(const GluingMatrix& theta);

/// Augmentation sums of the two partial contracting-homotopy label families:
///   sum_h = (alpha beta / 2)(gamma + delta - det),
///   sum_q = (gamma delta / 2)(alpha + beta - det).
std::pair<Int, Int> homotopy_augmentation_sums(const GluingMatrix& theta);

/// A cohomology class: canonical coordinates in the presentation of its
/// degree (empty for the zero group).
struct CohomologyClass {
    int degree = 0;
    std::vector<Int> coords;

    bool is_zero() const;
    bool operator==(const CohomologyClass&) const = default;
};

/// Cup-product evaluator over one coefficient ring, reducing products to
/// canonical class coordinates.
class CupRing {
public:
    CupRing(const GluingMatrix& theta, const Cohomology& cohomology);

    const CupTables& tables() const { return tables_; }
    const Cohomology& cohomology() const { return cohomology_; }
    CoefficientRing ring() const { return cohomology_.ring(); }

    /// Reduce a cocycle to its class.
    CohomologyClass class_of(const Cochain& u) const;
    /// Cup product of two cocycle classes.  Pairings with degree sum > 3
    /// land in the zero group; a degree-0 factor acts by its scalar.
    CohomologyClass cup(const Cochain& u, const Cochain& v) const;
    /// Raw cochain-level product for the table-driven pairings (1,1), (1,2).
    Cochain cup_cochain(const Cochain& u, const Cochain& v) const;

    CohomologyClass zero_class(int degree) const;
    CohomologyClass add(const CohomologyClass& a, const CohomologyClass& b) const;
    CohomologyClass scale(const CohomologyClass& a, Int c) const;

private:
    GluingMatrix theta_;
    const Cohomology& cohomology_;
    CupTables tables_;

    CohomologyClass canonicalize(int degree, std::vector<Int> coords) const;
};

/// A generator of the cohomology ring presentation.
struct RingGenerator {
    std::string name;  // zeta1, xi2, chi, ...
    int degree = 0;
    Int order = 0;  // 0 = infinite
    Cochain cochain;
};

/// One relation: coeff * prod(lhs) = sum of coeff * prod(rhs terms), where
/// factors index into the generator list.
struct RelationTerm {
    Int coeff = 1;
    std::vector<int> factors;
};

struct RingRelation {
    RelationTerm lhs;
    std::vector<RelationTerm> rhs;  // empty means zero
    std::string text;
    bool verified = false;
};

/// The graded ring presentation for one coefficient ring, with every
/// relation re-verified through the structure constants before handing out.
struct RingPresentation {
    CoefficientRing ring;
    int case_index = 0;
    std::string case_description;
    std::vector<RingGenerator> generators;
    std::vector<RingRelation> relations;
    std::optional<DerivationData> derivation;
};

RingPresentation ring_presentation(const GluingMatrix& theta, const CupRing& cup);

}  // namespace torusbundle
