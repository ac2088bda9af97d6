#include <algorithm>
#include <cmath>

#include "semtrack/error.hpp"
#include "semtrack/stationary.hpp"

namespace semtrack {

JointStationary3 stationary_three_state(const SourceParams3& src, const ChannelParams& ch, const RsPolicy& pol) {
    return stationary_numeric3(build_joint_chain_rs3(src, ch, pol));
}

JointStationary3 stationary_three_state_closed_form(const SourceParams3& src, const ChannelParams& ch,
                                                    const RsPolicy& pol) {
    if (!ch.has_third()) throw ValidationError("ps2", "three-state evaluation needs ps2");
    if (!pol.has_third()) throw ValidationError("pa2", "three-state evaluation needs pa2");
    const double p = src.p();
    const double q = src.q();
    const double a0 = pol.pa0() * ch.ps0();
    const double a1 = pol.pa1() * ch.ps1();
    const double a2 = pol.pa2() * ch.ps2();

    const double z2 = 2 * p * p * p * a2 * (a1 - 1) + q * a1 * (2 * q + a2 * (1 - 2 * q)) +
                      p * p * (-3 * q * a1 + a2 * (1 - 5 * q + a1 * (8 * q - 3))) +
                      p * (2 * q * (1 - q) * a2 + a1 * (q - 6 * q * q + a2 * (1 - 7 * q + 8 * q * q)));
    const double z1_tail =
        2 * p * p * a2 * (a0 - 1) * (a1 - 1) + a0 * (a1 * (q - 1) - q) * (-2 * q + a2 * (2 * q - 1)) +
        p * (q * a2 + a1 * (3 * q + (2 - 4 * q) * a2) + a0 * (q - 4 * q * a1 + a2 * (1 - 2 * q + a1 * (5 * q - 3))));
    const double z1 = (2 * p + q) * z2 * z1_tail;
    if (z1 == 0.0 || z2 == 0.0) throw DegenerateModelError("three-state closed form has a zero normalizer");

    const double w = p * (a2 - 1) - 2 * q + (2 * q - 1) * a2;
    const double y = 2 * p * a2 * (a1 - 1) - q * a2 + a1 * (4 * q * a2 - 2 * a2 - 3 * q);
    const double k = 3 * p - 1;

    JointStationary3 st;
    auto& pi = st.pi;
    pi[0][0] = q * q * k * a0 * a1 * w *
               (p * (a1 - 1) * ((q - 1) * a2 - q) + (a1 * (q - 1) - q) * ((2 * q - 1) * a2 - 2 * q)) / z1;
    pi[0][1] = p * q * q * k * a1 * (a0 - 1) * w * y / z1;
    pi[0][2] = p * q * a2 * (p * (a1 - 1) - 2 * q + (2 * q - 1) * a1) / z2;
    pi[1][0] = p * q * q * k * a0 * a1 * (a1 - 1) * w * ((3 * q - 1) * a2 - 3 * q) / z1;
    pi[1][1] = p * q * k * a1 * y * (p * (a0 - 1) * (-3 * q + (3 * q - 2) * a2) + a0 * (2 * q + a2 * (1 - 2 * q))) / z1;
    pi[1][2] = p * q * a2 * (1 - 3 * p) * (1 - a1) / z2;
    pi[2][0] = p * q * q * k * a0 * a1 * (a2 - 1) * (2 * p * (a1 - 1) + (q - 1) * a1 - q) * w / z1;
    pi[2][1] = q * p * p * k * a1 * (a2 - 1) * (2 * p * (a0 - 1) + (q - 1) * a0 - q) * y / z1;
    pi[2][2] = p * a2 * (p + 2 * p * p * (a1 - 1) + p * (q - 3) * a1 + q - p * q + a1 * (1 - q)) / z2;
    return st;
}

ThreeStateDiscrepancy compare_three_state(const SourceParams3& src, const ChannelParams& ch, const RsPolicy& pol,
                                          double tolerance) {
    ThreeStateDiscrepancy rep;
    rep.numeric = stationary_three_state(src, ch, pol);
    rep.closed_form = stationary_three_state_closed_form(src, ch, pol);
    rep.closed_form_total = rep.closed_form.total();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double n = rep.numeric(i, j);
            const double c = rep.closed_form(i, j);
            if (c < 0.0) rep.closed_form_has_negative = true;
            const double d = std::abs(n - c);
            if (!(d <= tolerance)) rep.mismatches.push_back({i, j, n, c});
            rep.max_abs_diff = std::max(rep.max_abs_diff, std::isfinite(d) ? d : HUGE_VAL);
        }
    }
    return rep;
}

}  // namespace semtrack
