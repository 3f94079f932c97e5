#include "gkp/ideal_code.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gkp::code {

using std::numbers::pi;

CodeLattice ideal_spike_lattice(Label label, Space space, double theta) {
    if (!(theta > 0.0)) throw std::domain_error("theta must be positive");
    CodeLattice lat;
    lat.label = label;
    lat.space = space;
    lat.theta = theta;
    lat.alternating = false;
    lat.offset = 0.0;
    if (space == Space::position) {
        switch (label) {
            case Label::zero: lat.period = 2.0 * theta; break;
            case Label::one:  lat.period = 2.0 * theta; lat.offset = theta; break;
            case Label::plus: lat.period = theta; break;
            case Label::minus: lat.period = theta; lat.alternating = true; break;
        }
    } else {
        const double unit = pi / theta;
        switch (label) {
            case Label::zero: lat.period = unit; break;
            case Label::one:  lat.period = unit; lat.alternating = true; break;
            case Label::plus: lat.period = 2.0 * unit; break;
            case Label::minus: lat.period = 2.0 * unit; lat.offset = unit; break;
        }
    }
    return lat;
}

namespace {

Recovery recover_modular(double measured, double spacing) {
    const double ratio = measured / spacing;
    double nearest = std::round(ratio);
    const double frac = ratio - std::floor(ratio);
    Recovery r;
    r.boundary = std::abs(frac - 0.5) < 1e-12;
    if (r.boundary) nearest = std::floor(ratio);  // tie toward the lower point
    r.corrected = nearest * spacing;
    r.shift = measured - r.corrected;
    r.correctable = std::abs(r.shift) < 0.5 * spacing && !r.boundary;
    return r;
}

}  // namespace

Recovery recover_position(double y_measured, double theta) {
    if (!(theta > 0.0)) throw std::domain_error("theta must be positive");
    return recover_modular(y_measured, 2.0 * pi * theta);
}

Recovery recover_momentum(double p_measured, double theta) {
    if (!(theta > 0.0)) throw std::domain_error("theta must be positive");
    return recover_modular(p_measured, pi / theta);
}

bool ErrorRegionSet::contains(double v) const {
    for (const auto& iv : intervals)
        if (v >= iv.lo && v < iv.hi) return true;
    return false;
}

double ErrorRegionSet::total_measure() const {
    double m = 0.0;
    for (const auto& iv : intervals) m += iv.hi - iv.lo;
    return m;
}

ErrorRegionSet position_error_regions(int d, bool symmetric_variant) {
    if (d < 1) throw std::domain_error("d must be >= 1");
    ErrorRegionSet set;
    set.space = Space::position;
    if (symmetric_variant) set.intervals.push_back({0.0, pi / 8.0, 0});
    for (int n = 1; n <= 2 * d - 1; ++n) {
        set.intervals.push_back({(4.0 * n - 1.0) * pi / 8.0, (4.0 * n + 1.0) * pi / 8.0, n});
    }
    set.intervals.push_back({pi * d - pi / 8.0, pi * d, 2 * d});
    return set;
}

ErrorRegionSet momentum_error_regions(Sign sign, int n_max) {
    if (n_max < 0) throw std::domain_error("n_max must be >= 0");
    ErrorRegionSet set;
    set.space = Space::momentum;
    for (int n = -n_max; n <= n_max; ++n) {
        const double center = sign == Sign::plus ? (2.0 * n + 1.0) * 8.0 * pi
                                                 : 2.0 * n * 8.0 * pi;
        set.intervals.push_back({center - 4.0 * pi, center + 4.0 * pi, n});
    }
    return set;
}

}  // namespace gkp::code
