// SPDX-License-Identifier: Apache-2.0

#include "nfbeam/excitation.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "nfbeam/array_geometry.hpp"

namespace nfbeam {

Excitation Excitation::uniform(std::size_t n) {
    Excitation e;
    e.magnitude.assign(n, 1.0);
    e.phase.assign(n, 0.0);
    e.active.assign(n, 1);
    return e;
}

std::size_t Excitation::active_count() const {
    std::size_t count = 0;
    for (auto a : active) {
        count += a ? 1 : 0;
    }
    return count;
}

double Excitation::power() const {
    double total = 0.0;
    for (std::size_t i = 0; i < magnitude.size(); ++i) {
        if (active[i]) {
            total += magnitude[i] * magnitude[i];
        }
    }
    return total;
}

void Excitation::validate() const {
    if (phase.size() != magnitude.size() || active.size() != magnitude.size()) {
        throw InvalidInput("excitation vectors have mismatched lengths");
    }
    for (std::size_t i = 0; i < magnitude.size(); ++i) {
        if (!(magnitude[i] >= 0.0) || !std::isfinite(magnitude[i]) || !std::isfinite(phase[i])) {
            throw InvalidInput("excitation element " + std::to_string(i) +
                               " has an invalid magnitude or phase");
        }
        if (!active[i] && magnitude[i] != 0.0) {
            throw InvalidInput("inactive excitation element " + std::to_string(i) +
                               " has non-zero magnitude");
        }
    }
}

void Excitation::deactivate(std::size_t i) {
    active.at(i) = 0;
    magnitude.at(i) = 0.0;
}

Excitation normalize_power(const Excitation& exc, double budget) {
    if (!(budget > 0.0) || !std::isfinite(budget)) {
        throw InvalidInput("power budget must be positive and finite");
    }
    exc.validate();
    const double p = exc.power();
    if (exc.active_count() == 0 || !(p > 0.0)) {
        throw InvalidInput("cannot normalise an excitation without active power");
    }
    const double scale = std::sqrt(budget / p);
    Excitation out = exc;
    for (auto& m : out.magnitude) {
        m *= scale;
    }
    return out;
}

Excitation superpose(const Excitation& a, const Excitation& b) {
    a.validate();
    b.validate();
    if (a.size() != b.size()) {
        throw InvalidInput("cannot superpose excitations of different sizes");
    }
    Excitation out;
    out.magnitude.resize(a.size());
    out.phase.resize(a.size());
    out.active.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::complex<double> sum = std::polar(a.magnitude[i], a.phase[i]) +
                                         std::polar(b.magnitude[i], b.phase[i]);
        out.active[i] = (a.active[i] || b.active[i]) ? 1 : 0;
        out.magnitude[i] = out.active[i] ? std::abs(sum) : 0.0;
        out.phase[i] = out.active[i] ? std::arg(sum) : 0.0;
    }
    return out;
}

}  // namespace nfbeam
