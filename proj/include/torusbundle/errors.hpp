#pragma once

#include <stdexcept>
#include <string>

namespace torusbundle {

/// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Checked 64-bit arithmetic overflowed.  Silent wraparound is never allowed.
struct OverflowError : Error {
    explicit OverflowError(const std::string& msg) : Error(msg) {}
};

/// The input matrix is not in GL2(Z) (determinant not +1 or -1).
struct InvalidMatrixError : Error {
    explicit InvalidMatrixError(const std::string& msg) : Error(msg) {}
};

/// A composite prime was passed where a prime modulus is required.
struct InvalidPrimeError : Error {
    explicit InvalidPrimeError(const std::string& msg) : Error(msg) {}
};

/// No row of the index-set table matches the sign pattern of (m1,n1,m2,n2).
/// Callers fall back to the lattice solver.
struct NoMatchingRowError : Error {
    explicit NoMatchingRowError(const std::string& msg) : Error(msg) {}
};

/// A table-constructed E failed its defining identity: a table-selection bug.
struct EVerificationError : Error {
    explicit EVerificationError(const std::string& msg) : Error(msg) {}
};

/// The lattice labeling could not be integrated consistently.  Must never
/// happen for a valid gluing matrix; treated as an internal error.
struct UnsolvableSystemError : Error {
    explicit UnsolvableSystemError(const std::string& msg) : Error(msg) {}
};

/// A composite of consecutive differentials is nonzero.
struct ChainComplexError : Error {
    explicit ChainComplexError(const std::string& msg) : Error(msg) {}
};

/// A quantity that must be an exact integer (a halved product, a square
/// root) is not.  Signals a transcription error, never valid input.
struct NonIntegralCoefficientError : Error {
    explicit NonIntegralCoefficientError(const std::string& msg) : Error(msg) {}
};

/// The rank/determinant classification predicates are inconsistent.
struct DegenerateClassificationError : Error {
    explicit DegenerateClassificationError(const std::string& msg) : Error(msg) {}
};

/// A closed-form ring relation disagrees with the structure-constant
/// evaluation.  Fatal consistency failure.
struct PresentationMismatchError : Error {
    explicit PresentationMismatchError(const std::string& msg) : Error(msg) {}
};

/// Cochains from different coefficient rings were combined.
struct RingMismatchError : Error {
    explicit RingMismatchError(const std::string& msg) : Error(msg) {}
};

/// A cochain degree outside 0..3 (or an unsupported pairing) was requested.
struct DegreeOutOfRangeError : Error {
    explicit DegreeOutOfRangeError(const std::string& msg) : Error(msg) {}
};

/// An internal cross-check failed (dual routes disagree).
struct ConsistencyError : Error {
    explicit ConsistencyError(const std::string& msg) : Error(msg) {}
};

}  // namespace torusbundle
