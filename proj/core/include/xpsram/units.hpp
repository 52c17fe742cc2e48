#pragma once

#include <cmath>
#include <stdexcept>

namespace xpsram {

// Wavelengths are compared with an absolute tolerance of 1e-6 nm; two values
// closer than that are the same optical channel.
constexpr double kWavelengthTolNm = 1e-6;

class Wavelength {
 public:
  Wavelength() = default;
  explicit Wavelength(double nm) : nm_(nm) {
    if (!(nm > 0.0)) throw std::invalid_argument("Wavelength must be > 0 nm");
  }
  double nm() const { return nm_; }

  bool same_channel_as(Wavelength other) const {
    return std::fabs(nm_ - other.nm_) <= kWavelengthTolNm;
  }

  friend bool operator<(Wavelength a, Wavelength b) { return a.nm_ < b.nm_; }

 private:
  double nm_ = 1310.52;
};

// dB insertion loss -> linear power transmission factor.
inline double db_to_linear(double loss_db) { return std::pow(10.0, -loss_db / 10.0); }

// Unit helpers used throughout; raw doubles carry the unit in the name
// (power_w, v_node_v, dt_ps, ...). Scaling divides or multiplies by exact
// powers of ten so config dumps round-trip bit-exactly.
constexpr double uw_to_w(double uw) { return uw / 1e6; }
constexpr double w_to_uw(double w) { return w * 1e6; }
constexpr double mw_to_w(double mw) { return mw / 1e3; }
constexpr double w_to_mw(double w) { return w * 1e3; }
constexpr double ns_to_s(double ns) { return ns / 1e9; }
constexpr double s_to_ns(double s) { return s * 1e9; }
constexpr double joules_to_fj(double j) { return j * 1e15; }

}  // namespace xpsram
