#pragma once

#include <functional>
#include <string>
#include <vector>

#include "quotamatch/market.hpp"

namespace quotamatch {

struct Expectation {
  std::string description;
  std::function<bool(const MarketInstance&)> run;
};

/// A named instance with the checks it is expected to satisfy.
struct Fixture {
  std::string name;
  std::string description;
  MarketInstance instance;
  std::vector<Expectation> expectations;
};

/// Registry of bundled instances; throws UnknownFixture for other names.
Fixture load_fixture(const std::string& name);

std::vector<std::string> fixture_names();

}  // namespace quotamatch
