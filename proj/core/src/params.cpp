#include "semtrack/params.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "semtrack/error.hpp"

namespace semtrack {
namespace {

std::string show(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require_open_unit(const char* field, double v) {
    if (!std::isfinite(v) || !(v > 0.0 && v < 1.0))
        throw ValidationError(field, "must lie strictly between 0 and 1, got " + show(v));
}

void require_half_open_unit(const char* field, double v) {
    if (!std::isfinite(v) || !(v > 0.0 && v <= 1.0))
        throw ValidationError(field, "must lie in (0, 1], got " + show(v));
}

void require_closed_unit(const char* field, double v) {
    if (!std::isfinite(v) || !(v >= 0.0 && v <= 1.0))
        throw ValidationError(field, "must lie in [0, 1], got " + show(v));
}

}  // namespace

SourceParams::SourceParams(double p, double q) : p_(p), q_(q) {
    require_open_unit("p", p);
    require_open_unit("q", q);
}

SourceParams3::SourceParams3(double p, double q) : p_(p), q_(q) {
    require_open_unit("p", p);
    require_open_unit("q", q);
    if (!(2.0 * p < 1.0)) throw ValidationError("p", "three-state source needs 2p < 1, got p = " + show(p));
    if (!(2.0 * q < 1.0)) throw ValidationError("q", "three-state source needs 2q < 1, got q = " + show(q));
    if (!(p + q < 1.0)) throw ValidationError("q", "three-state source needs p + q < 1");
}

SourceParams3::Matrix SourceParams3::transition_matrix() const noexcept {
    return {{{1.0 - 2.0 * p_, p_, p_},
             {q_, 1.0 - p_ - q_, p_},
             {q_, q_, 1.0 - 2.0 * q_}}};
}

ChannelParams::ChannelParams(double ps0, double ps1) : ps_{ps0, ps1, 0.0}, states_(2) {
    require_half_open_unit("ps0", ps0);
    require_half_open_unit("ps1", ps1);
}

ChannelParams::ChannelParams(double ps0, double ps1, double ps2) : ps_{ps0, ps1, ps2}, states_(3) {
    require_half_open_unit("ps0", ps0);
    require_half_open_unit("ps1", ps1);
    require_half_open_unit("ps2", ps2);
}

ChannelParams ChannelParams::mirrored() const {
    return ChannelParams(ps_[1], ps_[0]);
}

RsPolicy::RsPolicy(double pa0, double pa1) : pa_{pa0, pa1, 0.0}, states_(2) {
    require_closed_unit("pa0", pa0);
    require_closed_unit("pa1", pa1);
}

RsPolicy::RsPolicy(double pa0, double pa1, double pa2) : pa_{pa0, pa1, pa2}, states_(3) {
    require_closed_unit("pa0", pa0);
    require_closed_unit("pa1", pa1);
    require_closed_unit("pa2", pa2);
}

RsPolicy RsPolicy::mirrored() const {
    return RsPolicy(pa_[1], pa_[0]);
}

UniformPolicy::UniformPolicy(std::int64_t period) : d(period) {
    if (period < 1) throw ValidationError("d", "sampling period must be at least 1, got " + std::to_string(period));
}

CostWeights::CostWeights(double c01, double c10) : c01_(c01), c10_(c10) {
    if (!std::isfinite(c01) || c01 < 0.0) throw ValidationError("c01", "must be a finite nonnegative cost, got " + show(c01));
    if (!std::isfinite(c10) || c10 < 0.0) throw ValidationError("c10", "must be a finite nonnegative cost, got " + show(c10));
    if (c01 == 0.0 && c10 == 0.0) throw ValidationError("c01", "c01 and c10 cannot both be zero");
}

}  // namespace semtrack
