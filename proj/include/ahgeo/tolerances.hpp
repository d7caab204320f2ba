#pragma once

namespace ahgeo {

// All verdicts in the library compare residuals against these constants.
// They are deliberately centralized: a verdict must never depend on an
// ad-hoc threshold buried in a routine.
inline constexpr double kTolAlgebra = 1e-9;   // exact linear algebra identities
inline constexpr double kTolStructure = 1e-8; // J^2 = -I, compatibility, symmetry
inline constexpr double kTolCurvature = 1e-8; // curvature symmetry checks
inline constexpr double kTolClass = 1e-7;     // default classification tolerance
inline constexpr double kContradictionFloor = 1e-2; // residual needed to call a genuine obstruction
inline constexpr double kRankMargin = 1e-6;   // immersion rank test (min singular value)
inline constexpr double kGramFloor = 1e-6;    // reject nearly dependent sampled planes
inline constexpr double kNormFloor = 1e-12;   // guard for relative-residual denominators

} // namespace ahgeo
