#include <doctest.h>

#include "xpsram/wdm.hpp"

using namespace xpsram;

TEST_CASE("wavelengths within 1e-6 nm are one channel") {
  WdmSignal s;
  s.add(Wavelength(1310.52), 10e-6);
  s.add(Wavelength(1310.52 + 5e-7), 10e-6);  // inside tolerance, merges
  CHECK(s.size() == 1);
  CHECK(s.at(Wavelength(1310.52)) == doctest::Approx(20e-6).epsilon(1e-12));

  s.add(Wavelength(1310.52 + 1e-3), 5e-6);  // distinct channel
  CHECK(s.size() == 2);
  CHECK(s.at(Wavelength(1310.52 + 1e-3)) == doctest::Approx(5e-6).epsilon(1e-12));
  CHECK(s.at(Wavelength(1309.0)) == 0.0);
}

TEST_CASE("signals stay sorted and accumulate per channel") {
  WdmSignal s;
  s.add(Wavelength(1312.0), 1e-6);
  s.add(Wavelength(1310.0), 2e-6);
  s.add(Wavelength(1311.0), 3e-6);
  REQUIRE(s.size() == 3);
  CHECK(s.channels()[0].lambda_nm == doctest::Approx(1310.0));
  CHECK(s.channels()[2].lambda_nm == doctest::Approx(1312.0));

  WdmSignal t;
  t.add(Wavelength(1311.0), 4e-6);
  s.accumulate(t);
  CHECK(s.size() == 3);
  CHECK(s.at(Wavelength(1311.0)) == doctest::Approx(7e-6).epsilon(1e-12));
  CHECK(s.total_w() == doctest::Approx(10e-6).epsilon(1e-12));

  s.scale(0.5);
  CHECK(s.total_w() == doctest::Approx(5e-6).epsilon(1e-12));
  CHECK_FALSE(s.dark());
  s.clear();
  CHECK(s.dark());
}

TEST_CASE("negative power and zero-power adds") {
  WdmSignal s;
  CHECK_THROWS_AS(s.add(Wavelength(1310.0), -1e-9), std::invalid_argument);
  s.add(Wavelength(1310.0), 0.0);  // no channel created
  CHECK(s.size() == 0);
  CHECK_THROWS_AS(Wavelength(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Wavelength(-1.0), std::invalid_argument);
}
