#include "xpsram/wdm.hpp"

#include <algorithm>
#include <cmath>

namespace xpsram {

void WdmSignal::add(Wavelength lambda, double power_w) {
  if (power_w < 0.0) throw std::invalid_argument("optical power must be >= 0");
  if (power_w == 0.0) return;
  const double nm = lambda.nm();
  auto it = std::lower_bound(channels_.begin(), channels_.end(), nm - kWavelengthTolNm,
                             [](const Channel& c, double v) { return c.lambda_nm < v; });
  if (it != channels_.end() && std::fabs(it->lambda_nm - nm) <= kWavelengthTolNm) {
    it->power_w += power_w;
    return;
  }
  channels_.insert(it, Channel{nm, power_w});
}

void WdmSignal::accumulate(const WdmSignal& other) {
  for (const Channel& c : other.channels_) add(Wavelength(c.lambda_nm), c.power_w);
}

void WdmSignal::scale(double factor) {
  if (factor < 0.0) throw std::invalid_argument("scale factor must be >= 0");
  for (Channel& c : channels_) c.power_w *= factor;
}

double WdmSignal::at(Wavelength lambda) const {
  const double nm = lambda.nm();
  for (const Channel& c : channels_) {
    if (std::fabs(c.lambda_nm - nm) <= kWavelengthTolNm) return c.power_w;
    if (c.lambda_nm > nm + kWavelengthTolNm) break;
  }
  return 0.0;
}

double WdmSignal::total_w() const {
  double sum = 0.0;
  for (const Channel& c : channels_) sum += c.power_w;
  return sum;
}

bool WdmSignal::dark() const { return total_w() == 0.0; }

}  // namespace xpsram
