#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "torusbundle/report.hpp"

namespace torusbundle {

/// Deterministic sampler of matrices with entries in [-bound, bound] and
/// determinant +-1 (rejection sampling driven by a fixed 64-bit generator,
/// reproducible across platforms).
std::vector<GluingMatrix> sample_gluing_matrices(std::uint64_t seed, int count, Int bound = 8);

/// The six matrices exercising the six integral classification cases.
const std::vector<GluingMatrix>& six_case_corpus();

/// One matrix per index-table row, keyed by the row it must select.
struct TableCorpusEntry {
    GluingMatrix theta;
    int expected_row;
};
const std::vector<TableCorpusEntry>& table_coverage_corpus();

struct SuiteTally {
    std::string name;
    long long passed = 0;
    long long total = 0;
    std::vector<std::string> failures;  // capped, for diagnostics

    bool ok() const { return passed == total; }
};

struct VerificationReport {
    std::uint64_t seed = 0;
    int samples = 0;
    std::vector<SuiteTally> suites;
    long long lattice_fallbacks = 0;  // samples where no table row matched
    bool all_passed = true;
};

struct VerifyOptions {
    std::uint64_t seed = 20240817;
    int samples = 500;
    int jobs = 1;
};

/// Run every invariant suite over `samples` random matrices plus the
/// curated corpora.  Pure and deterministic for a fixed seed.
VerificationReport run_verification(const VerifyOptions& options);

std::string verification_to_text(const VerificationReport& report);

}  // namespace torusbundle
