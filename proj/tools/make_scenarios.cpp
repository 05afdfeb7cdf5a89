// Regenerates the bundled scenario files. Usage: make_scenarios [out_dir]

#include <cstdio>
#include <filesystem>

#include "fixtures.hpp"

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "scenarios";
  std::filesystem::create_directories(dir);
  for (const mqplan::Scenario& s : mqplan::fixtures::all()) {
    const std::filesystem::path path = dir / (s.name + ".json");
    mqplan::save_scenario(s, path);
    std::printf("wrote %s\n", path.string().c_str());
  }
  return 0;
}
