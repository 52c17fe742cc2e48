#pragma once

#include <numbers>
#include <span>
#include <utility>

#include "xpsram/units.hpp"
#include "xpsram/wdm.hpp"

namespace xpsram {

// FSR and dl tuning are evaluated at the 1310.52 nm operating point.
constexpr double kFsrEvalWavelengthNm = 1310.52;

// FSR for the default geometry (R = 7.5 um, n_g = 4.0): 9.1114 nm.
constexpr double kDefaultFsrNm =
    kFsrEvalWavelengthNm * kFsrEvalWavelengthNm /
    (4.0 * 2.0 * std::numbers::pi * 7500.0);

// Default thermal coefficient: half an FSR of trim costs exactly 7.2 mW.
constexpr double kDefaultThermalCoeffNmPerMw = (kDefaultFsrNm / 2.0) / 7.2;

// Add-drop microring geometry and coefficients. Coupling gaps are not modeled
// explicitly; their effect is folded into fwhm_nm and the insertion losses.
// Defaults put the resonance at 1310.52 nm under a 1 V drive and keep every
// margin intact when a latch ring sits 25 pm off its design wavelength.
struct RingParams {
  double radius_um = 7.5;
  double dl_nm = 0.0;             // geometric length adjustment (WDM tuning)
  double lambda_geo_nm = 1309.72; // designed resonance at zero drive/heat/dl
  double geo_offset_nm = 0.0;     // fabrication deviation from the design
  double fwhm_nm = 0.3;
  double s_eo_nm_per_v = 0.8;     // electro-optic shift
  double s_th_nm_per_mw = kDefaultThermalCoeffNmPerMw;
  double il_thru_db = 0.1;
  double il_drop_db = 1.0;
  double group_index = 4.0;

  void validate() const;  // throws std::invalid_argument
};

struct RingState {
  RingParams params;
  double v_drive_v = 0.0;  // clamped to [0, VDD] by the driver upstream
  double p_heat_mw = 0.0;
};

// Photodiode as a light-controlled conductance G = g_dark + gamma * P inside a
// rail-node-rail divider. Responsivity is only used by the energy accounting.
struct PdParams {
  double gamma_s_per_w = 2.0;
  double g_dark_s = 1e-9;
  double responsivity_a_per_w = 2.5;  // effective; energy calibration constant

  void validate() const;
};

// Single-pole Lorentzian power response, 1 at zero detuning, 1/2 at +-fwhm/2.
double lorentzian_response(double detuning_nm, double fwhm_nm);

// Free spectral range lambda^2 / (n_g * 2*pi*R) at the operating wavelength.
double fsr_nm(const RingParams& params);

// Resonance shift for a geometric length adjustment dl. Slope is pinned to
// FSR / (8 * 34 nm): eight 34 nm steps walk exactly one FSR.
double dl_shift_nm(double dl_nm, const RingParams& params);

// lambda_res = lambda_geo + s_eo*v + s_th*p_heat + dl_shift(dl).
Wavelength resonance_wavelength(const RingState& state);

struct RingTransfer {
  double thru_w = 0.0;
  double drop_w = 0.0;
};

// Add-drop power transfer at a single wavelength. thru + drop <= in, strictly
// when either insertion loss is nonzero.
RingTransfer ring_transfer(double p_in_w, Wavelength lambda, const RingState& state);

// 50:50 power splitter; both outputs carry p/2 times the (linear) loss.
std::pair<double, double> split_5050(double p_in_w, double il_split_db = 0.0);

// MMI combiner: incoherent per-wavelength power sum times the insertion loss.
WdmSignal mmi_combine(std::span<const WdmSignal> inputs, double il_mmi_db = 0.5);

double pd_conductance(double p_incident_w, const PdParams& params);

}  // namespace xpsram
