#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torusbundle/cup_product.hpp"

namespace torusbundle {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;

    bool operator==(const CheckResult&) const = default;
};

/// Plain serializable mirror of one cohomology group.
struct GroupData {
    int degree = 0;
    std::string name;  // "Z^3", "Z_2 + Z", ...
    std::vector<Int> invariant_factors;
    std::vector<std::vector<Int>> generators;

    bool operator==(const GroupData&) const = default;
};

struct GeneratorData {
    std::string name;
    int degree = 0;
    Int order = 0;
    std::vector<Int> coords;

    bool operator==(const GeneratorData&) const = default;
};

struct RelationData {
    std::string text;
    bool verified = false;

    bool operator==(const RelationData&) const = default;
};

struct DerivationJson {
    int case_index = 0;
    int rank = 0;
    Int det = 0;
    bool has_rank1 = false;
    Int p = 0, q = 0, r_prime = 0, s_prime = 0, k = 0, ell = 0;
    std::optional<Int> r_doubleprime, m, m_prime;

    bool operator==(const DerivationJson&) const = default;
};

struct RingSectionData {
    std::string ring;  // "Z", "Z2", "Z5", ...
    std::vector<GroupData> groups;
    int case_index = 0;
    std::string case_description;
    std::vector<GeneratorData> generators;
    std::vector<RelationData> relations;
    std::vector<std::vector<Int>> table_m1, table_m2, table_m3, table_n;
    std::optional<DerivationJson> derivation;

    bool operator==(const RingSectionData&) const = default;
};

/// Everything one pipeline run produces for a single gluing matrix.
struct Report {
    int schema_version = 1;
    Int alpha = 0, gamma = 0, beta = 0, delta = 0;
    Int det = 0;
    int rank_theta_minus_identity = 0;
    Int m1 = 0, n1 = 0, m2 = 0, n2 = 0;
    std::string e_source;  // "table" or "lattice"
    int table_row = 0;     // 0 when the lattice fallback was used
    std::vector<RingSectionData> rings;
    std::vector<CheckResult> verification;
    bool all_checks_passed = false;

    bool operator==(const Report&) const = default;
};

/// Run the full pipeline for one matrix over the requested rings.
Report run_report(const GluingMatrix& theta, const std::vector<CoefficientRing>& rings);

/// The per-matrix consistency checks recorded in every report.
std::vector<CheckResult> run_consistency_checks(const GluingMatrix& theta,
                                                const std::vector<CoefficientRing>& rings);

std::string report_to_json(const Report& report, int indent = 2);
Report report_from_json(const std::string& text);
std::string report_to_text(const Report& report);

/// Case formulas for the groups, used as a cross-check against the
/// elimination-based computation (never as its implementation).
std::array<std::vector<Int>, 4> expected_invariant_factors(const GluingMatrix& theta,
                                                           CoefficientRing ring);

}  // namespace torusbundle
