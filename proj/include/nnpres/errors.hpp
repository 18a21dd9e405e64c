#pragma once

#include <stdexcept>
#include <string>

namespace nnpres {

/// Input matrix violates the symmetry tolerance.
struct NotSymmetric : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Input matrix is not upper-triangular.
struct NotTriangular : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A declared structure tag fails its validator.
struct StructureMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed input file or schema violation.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Iteration cap reached without meeting the convergence criterion.
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A spectrum expected to be real contains a nonreal value.
struct ComplexSpectrumError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Sylvester blocks share (numerically) an eigenvalue, so the solve is singular.
struct SpectraOverlap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Supplied polynomial does not annihilate the matrix.
struct NotAnnihilating : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Inverse-DFT output carried an imaginary residue above tolerance.
/// Signals an evaluation bug, not bad user input.
struct ImaginaryResidue : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Matrix power-series terms grew for many consecutive terms.
struct SeriesDivergenceGuard : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A structural zero/product identity of a matrix power failed.
struct PatternViolation : std::runtime_error {
    PatternViolation(const std::string& what, int power, int row, int col)
        : std::runtime_error(what), power(power), row(row), col(col) {}
    int power; ///< offending power p of A^p
    int row;   ///< 1-based entry indices
    int col;
};

/// Function is neither even nor odd.
struct MixedParity : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Shift r is below the largest eigenvalue magnitude.
struct ShiftTooSmall : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace nnpres
