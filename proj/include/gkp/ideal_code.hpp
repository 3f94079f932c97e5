#pragma once

#include <vector>

// Ideal single-mode comb codewords with spacing parameter theta (1/8 for the
// cavity scheme), the modular-shift recovery rules, and the error-region
// geometry used by the intrinsic-error analysis.

namespace gkp::code {

enum class Label { zero, one, plus, minus };
enum class Space { position, momentum };

struct CodeLattice {
    Label label;
    Space space;
    double theta;
    double period;        // spike spacing in the native coordinate of `space`
    double offset;        // first spike position
    bool alternating;     // sign pattern (-1)^s instead of all +1
};

CodeLattice ideal_spike_lattice(Label label, Space space, double theta = 0.125);

struct Recovery {
    double corrected;     // nearest lattice point
    double shift;         // applied correction, measured - corrected
    bool correctable;     // |shift| strictly below half the lattice spacing
    bool boundary;        // exactly midway; tie broken toward the lower point
};

// Position recovery in the scaled coordinate y (lattice spacing 2*pi*theta,
// i.e. pi/4 for theta = 1/8), correctable threshold half of that.
Recovery recover_position(double y_measured, double theta = 0.125);

// Momentum recovery, lattice spacing pi/theta (8*pi), threshold pi/(2*theta).
Recovery recover_momentum(double p_measured, double theta = 0.125);

struct Interval {
    double lo, hi;        // half-open [lo, hi): boundary outcomes excluded
    int index;
};

struct ErrorRegionSet {
    Space space;
    std::vector<Interval> intervals;   // pairwise disjoint, increasing
    bool contains(double v) const;
    double total_measure() const;
};

// The 2d position-space error regions of the zero-codeword analysis:
// [(4n-1)pi/8, (4n+1)pi/8] for n = 1..2d-1 plus the terminal half region
// [pi d - pi/8, pi d]. The left-edge half region [0, pi/8] is deliberately
// not an error region; an optional symmetric variant includes it.
ErrorRegionSet position_error_regions(int d, bool symmetric_variant = false);

enum class Sign { plus, minus };

// Momentum error regions: width 8*pi, centered on odd multiples of 8*pi for
// the plus set and on even multiples for the minus set, n = -n_max..n_max.
ErrorRegionSet momentum_error_regions(Sign sign, int n_max);

}  // namespace gkp::code
