// SPDX-License-Identifier: Apache-2.0
//
// Per-element excitation currents I_n = gamma_n * exp(j phi_n).

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nfbeam {

struct Excitation {
    std::vector<double> magnitude;     ///< gamma_n >= 0
    std::vector<double> phase;         ///< phi_n [rad]
    std::vector<std::uint8_t> active;  ///< 1 if the element radiates

    /// All elements active with unit magnitude and zero phase.
    static Excitation uniform(std::size_t n);

    std::size_t size() const { return magnitude.size(); }
    std::size_t active_count() const;

    /// Sum of gamma_n^2 over active elements.
    double power() const;

    /// Throws InvalidInput if sizes differ, a magnitude is negative or
    /// non-finite, or an inactive element has non-zero magnitude.
    void validate() const;

    /// Marks element i inactive and zeroes its magnitude.
    void deactivate(std::size_t i);
};

/// Scales all magnitudes by one factor so that the total power equals
/// `budget`. Throws InvalidInput when no element is active or the budget is
/// not positive.
Excitation normalize_power(const Excitation& exc, double budget);

/// Element-wise complex sum of two excitations of equal size. The result is
/// active wherever either input is active.
Excitation superpose(const Excitation& a, const Excitation& b);

}  // namespace nfbeam
