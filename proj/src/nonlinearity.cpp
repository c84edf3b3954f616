#include "fplab/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fplab {

Nonlinearity Nonlinearity::zero() { return {}; }

Nonlinearity Nonlinearity::power(double kappa, double coeff) {
    if (!(kappa > 0.0) || !(coeff >= 0.0))
        throw std::invalid_argument("nonlinearity: power needs kappa > 0, coeff >= 0");
    Nonlinearity n;
    n.kind_ = Kind::Power;
    n.kappa_ = kappa;
    n.coeff_ = coeff;
    return n;
}

Nonlinearity Nonlinearity::truncated(const Nonlinearity& base, double level) {
    if (!(level > 0.0)) throw std::invalid_argument("nonlinearity: truncation level must be > 0");
    Nonlinearity n = base;
    n.level_ = level;
    if (base.kind_ == Kind::Power || base.kind_ == Kind::TruncatedPower) {
        n.kind_ = Kind::TruncatedPower;
        n.base_kind_power_ = true;
        if (base.kind_ == Kind::TruncatedPower) n.level_ = std::min(level, base.level_);
    } else if (base.kind_ == Kind::Zero) {
        n.kind_ = Kind::Zero;
    } else {
        n.kind_ = Kind::TruncatedTable;
    }
    return n;
}

Nonlinearity Nonlinearity::table(std::vector<double> ts, std::vector<double> gs) {
    if (ts.size() != gs.size() || ts.size() < 2)
        throw std::invalid_argument("nonlinearity: table needs >= 2 samples");
    if (!std::is_sorted(ts.begin(), ts.end()) || !std::is_sorted(gs.begin(), gs.end()))
        throw std::invalid_argument("nonlinearity: table samples must be nondecreasing");
    Nonlinearity n;
    n.kind_ = Kind::Table;
    n.ts_ = std::move(ts);
    n.gs_ = std::move(gs);
    // cumulative trapezoid primitive, anchored so that G(0) = 0
    n.Gs_.assign(n.ts_.size(), 0.0);
    for (size_t k = 1; k < n.ts_.size(); ++k)
        n.Gs_[k] = n.Gs_[k - 1] +
                   0.5 * (n.gs_[k] + n.gs_[k - 1]) * (n.ts_[k] - n.ts_[k - 1]);
    // shift by the primitive value at t = 0
    double at0;
    {
        Nonlinearity tmp = n;
        at0 = tmp.G_table_raw(0.0);
    }
    for (auto& v : n.Gs_) v -= at0;
    return n;
}

double Nonlinearity::g_raw(double t) const {
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::Power:
        case Kind::TruncatedPower:
            return t == 0.0 ? 0.0 : coeff_ * std::pow(std::abs(t), kappa_ - 1.0) * t;
        case Kind::Table:
        case Kind::TruncatedTable: {
            if (t <= ts_.front()) return gs_.front();
            if (t >= ts_.back()) return gs_.back();
            auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
            size_t k = static_cast<size_t>(it - ts_.begin());
            double w = (t - ts_[k - 1]) / (ts_[k] - ts_[k - 1]);
            return gs_[k - 1] + w * (gs_[k] - gs_[k - 1]);
        }
    }
    return 0.0;
}

double Nonlinearity::g(double t) const {
    double v = g_raw(t);
    if (kind_ == Kind::TruncatedPower || kind_ == Kind::TruncatedTable)
        v = std::clamp(v, -level_, level_);
    return v;
}

double Nonlinearity::G(double t) const {
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::Power:
            return coeff_ * std::pow(std::abs(t), kappa_ + 1.0) / (kappa_ + 1.0);
        case Kind::TruncatedPower: {
            // clamp threshold |t_n| where coeff |t|^kappa = level
            double tn = std::pow(level_ / coeff_, 1.0 / kappa_);
            double a = std::abs(t);
            if (a <= tn) return coeff_ * std::pow(a, kappa_ + 1.0) / (kappa_ + 1.0);
            return coeff_ * std::pow(tn, kappa_ + 1.0) / (kappa_ + 1.0) + level_ * (a - tn);
        }
        case Kind::Table:
        case Kind::TruncatedTable: {
            // numeric primitive of the (possibly clamped) interpolant
            const int steps = 256;
            double acc = 0.0, h = t / steps;
            for (int k = 0; k < steps; ++k) acc += 0.5 * (g(k * h) + g((k + 1) * h)) * h;
            return acc;
        }
    }
    return 0.0;
}

double Nonlinearity::G_table_raw(double t) const {
    if (t <= ts_.front()) return Gs_.front() + gs_.front() * (t - ts_.front());
    if (t >= ts_.back()) return Gs_.back() + gs_.back() * (t - ts_.back());
    auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
    size_t k = static_cast<size_t>(it - ts_.begin());
    double dt = t - ts_[k - 1];
    double slope = (gs_[k] - gs_[k - 1]) / (ts_[k] - ts_[k - 1]);
    return Gs_[k - 1] + gs_[k - 1] * dt + 0.5 * slope * dt * dt;
}

double Nonlinearity::slope(double t) const {
    double delta = 1e-6 * (1.0 + std::abs(t));
    double s = (g(t + delta) - g(t - delta)) / (2.0 * delta);
    return std::max(s, 0.0);
}

bool Nonlinearity::monotone_on_samples(double lo, double hi, int n) const {
    if (std::abs(g(0.0)) > 1e-14) return false;
    double prev = g(lo);
    for (int k = 1; k < n; ++k) {
        double t = lo + (hi - lo) * k / (n - 1);
        double v = g(t);
        if (v < prev - 1e-12) return false;
        prev = v;
    }
    return true;
}

}  // namespace fplab
