#pragma once

#include <Eigen/Core>

#include <memory>
#include <vector>

namespace fplab {

/// Nondecreasing absorption/source term g with g(0) = 0 and its convex
/// primitive G(r) = int_0^r g.
class Nonlinearity {
  public:
    static Nonlinearity zero();
    /// g(t) = coeff * |t|^{kappa-1} t, kappa > 0.
    static Nonlinearity power(double kappa, double coeff = 1.0);
    /// T_n o g: output clamped to [-n, n].
    static Nonlinearity truncated(const Nonlinearity& base, double level);
    /// Monotone piecewise-linear interpolation of (t_i, g_i) samples;
    /// constant extrapolation outside the sample range.
    static Nonlinearity table(std::vector<double> ts, std::vector<double> gs);

    double g(double t) const;
    double G(double t) const;
    /// Nonnegative slope estimate, used by the Newton path.
    double slope(double t) const;

    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_power() const { return kind_ == Kind::Power || base_kind_power_; }
    double power_exponent() const { return kappa_; }
    double power_coeff() const { return coeff_; }
    double truncation_level() const { return level_; }

    /// Checks g nondecreasing and g(0) = 0 on a sample grid of arguments.
    bool monotone_on_samples(double lo = -50.0, double hi = 50.0, int n = 2001) const;

  private:
    enum class Kind { Zero, Power, TruncatedPower, Table, TruncatedTable };
    Kind kind_ = Kind::Zero;
    double kappa_ = 1.0, coeff_ = 1.0, level_ = 0.0;
    bool base_kind_power_ = false;
    std::vector<double> ts_, gs_, Gs_;

    double g_raw(double t) const;
    double G_table_raw(double t) const;
};

}  // namespace fplab
