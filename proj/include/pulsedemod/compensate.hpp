#pragma once

// Brings raw IQ records to the compensated form the demodulators assume:
// DC-offset removal (least-squares circle fit) and rotation by the constant
// path phase so the constellation oscillates about the positive-I axis.

#include "pulsedemod/types.hpp"

namespace pulsedemod {

/// Applies the rotation matrix [[cos t, sin t], [-sin t, cos t]] to every
/// sample. Magnitudes are preserved.
IQSeries rotate(const IQSeries& iq, double theta_rad);

struct DcRemoval {
    IQSeries series;
    double center_i;
    double center_q;
};

/// Algebraic (Kasa) circle fit to the constellation; subtracts the fitted
/// center. Requires >= 10 samples spanning an arc of at least 0.1 rad;
/// degenerate constellations raise NumericError("insufficient arc ...").
DcRemoval remove_dc(const IQSeries& iq);

/// Circular-mean angle of the samples; rotating by the result centers the
/// constellation on angle zero. Expects DC to be removed already. A
/// near-zero mean vector raises NumericError("ambiguous rotation ...").
double estimate_rotation(const IQSeries& iq);

} // namespace pulsedemod
