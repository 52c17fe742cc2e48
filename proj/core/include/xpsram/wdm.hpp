#pragma once

#include <vector>

#include "xpsram/units.hpp"

namespace xpsram {

// Per-channel optical power map (wavelength -> watts). Signals are incoherent:
// powers at the same wavelength add, distinct wavelengths never mix. Channels
// closer than the wavelength tolerance are merged into one entry.
class WdmSignal {
 public:
  struct Channel {
    double lambda_nm;
    double power_w;
  };

  WdmSignal() = default;
  WdmSignal(Wavelength lambda, double power_w) { add(lambda, power_w); }

  void add(Wavelength lambda, double power_w);
  void accumulate(const WdmSignal& other);
  void scale(double factor);
  void clear() { channels_.clear(); }

  // Power at a wavelength (0 if no channel within tolerance).
  double at(Wavelength lambda) const;
  double total_w() const;
  bool dark() const;

  const std::vector<Channel>& channels() const { return channels_; }
  std::size_t size() const { return channels_.size(); }

 private:
  std::vector<Channel> channels_;  // sorted by wavelength
};

}  // namespace xpsram
