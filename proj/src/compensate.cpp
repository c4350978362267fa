#include "pulsedemod/compensate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pulsedemod/errors.hpp"

namespace pulsedemod {

IQSeries rotate(const IQSeries& iq, double theta_rad) {
    const double c = std::cos(theta_rad);
    const double s = std::sin(theta_rad);
    std::vector<IQSample> out(iq.size());
    for (std::size_t k = 0; k < iq.size(); ++k) {
        const IQSample& in = iq.samples()[k];
        out[k] = IQSample{c * in.i + s * in.q, -s * in.i + c * in.q};
    }
    return IQSeries(iq.sampling_rate_hz(), std::move(out));
}

namespace {

// Angular extent of the samples as seen from `center`: 2 pi minus the
// largest gap between consecutive sorted angles.
double arc_extent(const std::vector<IQSample>& samples, double cx, double cy) {
    std::vector<double> angles;
    angles.reserve(samples.size());
    for (const IQSample& s : samples) {
        angles.push_back(std::atan2(s.q - cy, s.i - cx));
    }
    std::sort(angles.begin(), angles.end());
    double max_gap = 2.0 * kPi - (angles.back() - angles.front());
    for (std::size_t k = 1; k < angles.size(); ++k) {
        max_gap = std::max(max_gap, angles[k] - angles[k - 1]);
    }
    return 2.0 * kPi - max_gap;
}

} // namespace

DcRemoval remove_dc(const IQSeries& iq) {
    const std::vector<IQSample>& s = iq.samples();
    if (s.size() < 10) {
        throw std::invalid_argument("DC removal needs at least 10 samples");
    }
    const double n = static_cast<double>(s.size());

    // Kasa fit of x^2 + y^2 + D x + E y + F = 0 on mean-centered coordinates;
    // centering decouples F, leaving a 2x2 system for D and E.
    double mx = 0.0, my = 0.0;
    for (const IQSample& p : s) {
        mx += p.i;
        my += p.q;
    }
    mx /= n;
    my /= n;

    double sxx = 0.0, sxy = 0.0, syy = 0.0, sxz = 0.0, syz = 0.0;
    for (const IQSample& p : s) {
        const double x = p.i - mx;
        const double y = p.q - my;
        const double z = x * x + y * y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        sxz += x * z;
        syz += y * z;
    }
    const double det = sxx * syy - sxy * sxy;
    const double scale = std::max(sxx, syy);
    if (!(det > 1e-12 * scale * scale)) {
        throw NumericError("insufficient arc: degenerate constellation for circle fit");
    }
    const double d = (-sxz * syy + syz * sxy) / det;
    const double e = (-syz * sxx + sxz * sxy) / det;
    const double cx = mx - d / 2.0;
    const double cy = my - e / 2.0;

    if (arc_extent(s, cx, cy) < 0.1) {
        throw NumericError("insufficient arc: constellation subtends less than 0.1 rad");
    }

    std::vector<IQSample> out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        out[k] = IQSample{s[k].i - cx, s[k].q - cy};
    }
    return DcRemoval{IQSeries(iq.sampling_rate_hz(), std::move(out)), cx, cy};
}

double estimate_rotation(const IQSeries& iq) {
    if (iq.size() == 0) {
        throw std::invalid_argument("rotation estimate needs samples");
    }
    double mi = 0.0, mq = 0.0;
    for (const IQSample& s : iq.samples()) {
        mi += s.i;
        mq += s.q;
    }
    mi /= static_cast<double>(iq.size());
    mq /= static_cast<double>(iq.size());
    if (std::hypot(mi, mq) < 1e-9) {
        throw NumericError("ambiguous rotation: mean vector has near-zero magnitude");
    }
    return std::atan2(mq, mi);
}

} // namespace pulsedemod
