#include "xpsram/optics.hpp"

#include <cmath>
#include <stdexcept>

#include "xpsram/log.hpp"

namespace xpsram {

void RingParams::validate() const {
  if (!(fwhm_nm > 0.0)) throw std::invalid_argument("ring fwhm_nm must be > 0");
  if (!(radius_um > 0.0)) throw std::invalid_argument("ring radius_um must be > 0");
  if (il_thru_db < 0.0 || il_drop_db < 0.0)
    throw std::invalid_argument("ring insertion losses must be >= 0");
  if (!(group_index > 1.0)) throw std::invalid_argument("ring group_index must be > 1");
  if (!(lambda_geo_nm > 0.0)) throw std::invalid_argument("ring lambda_geo_nm must be > 0");
  if (s_th_nm_per_mw < 0.0) throw std::invalid_argument("ring s_th_nm_per_mw must be >= 0");
}

void PdParams::validate() const {
  if (gamma_s_per_w < 0.0 || g_dark_s < 0.0 || responsivity_a_per_w < 0.0)
    throw std::invalid_argument("photodiode parameters must be >= 0");
}

double lorentzian_response(double detuning_nm, double fwhm_nm) {
  if (!(fwhm_nm > 0.0)) throw std::invalid_argument("lorentzian fwhm_nm must be > 0");
  const double x = 2.0 * detuning_nm / fwhm_nm;
  return 1.0 / (1.0 + x * x);
}

double fsr_nm(const RingParams& params) {
  if (!(params.radius_um > 0.0) || !(params.group_index > 0.0))
    throw std::invalid_argument("fsr requires radius and group index > 0");
  const double radius_nm = params.radius_um * 1e3;
  return kFsrEvalWavelengthNm * kFsrEvalWavelengthNm /
         (params.group_index * 2.0 * std::numbers::pi * radius_nm);
}

double dl_shift_nm(double dl_nm, const RingParams& params) {
  constexpr double kStepNm = 34.0;
  constexpr double kStepsPerFsr = 8.0;
  if (std::fabs(dl_nm) > kStepsPerFsr * kStepNm) {
    log::warn("dl adjustment " + std::to_string(dl_nm) +
              " nm exceeds one FSR worth of steps (" +
              std::to_string(kStepsPerFsr * kStepNm) + " nm)");
  }
  return dl_nm * fsr_nm(params) / (kStepsPerFsr * kStepNm);
}

Wavelength resonance_wavelength(const RingState& state) {
  const RingParams& p = state.params;
  return Wavelength(p.lambda_geo_nm + p.geo_offset_nm +
                    p.s_eo_nm_per_v * state.v_drive_v +
                    p.s_th_nm_per_mw * state.p_heat_mw + dl_shift_nm(p.dl_nm, p));
}

RingTransfer ring_transfer(double p_in_w, Wavelength lambda, const RingState& state) {
  if (p_in_w < 0.0) throw std::invalid_argument("ring input power must be >= 0");
  const double detuning = lambda.nm() - resonance_wavelength(state).nm();
  const double response = lorentzian_response(detuning, state.params.fwhm_nm);
  RingTransfer t;
  t.drop_w = p_in_w * response * db_to_linear(state.params.il_drop_db);
  t.thru_w = p_in_w * (1.0 - response) * db_to_linear(state.params.il_thru_db);
  return t;
}

std::pair<double, double> split_5050(double p_in_w, double il_split_db) {
  if (p_in_w < 0.0) throw std::invalid_argument("splitter input power must be >= 0");
  const double out = 0.5 * p_in_w * db_to_linear(il_split_db);
  return {out, out};
}

WdmSignal mmi_combine(std::span<const WdmSignal> inputs, double il_mmi_db) {
  if (inputs.empty()) throw std::invalid_argument("mmi_combine requires at least one input");
  WdmSignal out;
  for (const WdmSignal& s : inputs) out.accumulate(s);
  out.scale(db_to_linear(il_mmi_db));
  return out;
}

double pd_conductance(double p_incident_w, const PdParams& params) {
  if (p_incident_w < 0.0) throw std::invalid_argument("pd incident power must be >= 0");
  return params.g_dark_s + params.gamma_s_per_w * p_incident_w;
}

}  // namespace xpsram
