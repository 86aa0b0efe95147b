#pragma once

namespace svl {

// Every numerical tolerance used for validation lives here.
struct Tolerances {
  double structural = 1e-12;     // norm, trace, hermiticity
  double psd = 1e-10;            // smallest admissible eigenvalue is -psd
  double coefficient_norm = 1e-9;  // user-supplied state coefficients
  double tensor_entry = 1e-10;   // |m_ijk| <= 1 + tensor_entry
};

inline constexpr Tolerances kTolerances{};

}  // namespace svl
