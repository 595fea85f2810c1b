// Copyright 2026 The EvoLab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Writes the synthetic lookup-question pool used by the examples and tests.

#include <CLI11.hpp>

#include <iostream>

#include "evolab/core/errors.h"
#include "evolab/inner/task.h"

int main(int argc, char** argv) {
  evolab::TaskGenConfig config;
  std::string out;
  CLI::App app{"Generate a synthetic task pool"};
  app.add_option("--out", out, "Output tasks.jsonl")->required();
  app.add_option("--families", config.families)->check(CLI::PositiveNumber);
  app.add_option("--tasks-per-family", config.tasks_per_family)->check(CLI::PositiveNumber);
  app.add_option("--keys-per-family", config.keys_per_family)->check(CLI::PositiveNumber);
  app.add_option("--max-steps", config.max_steps)->check(CLI::PositiveNumber);
  app.add_option("--seed", config.seed);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  try {
    const auto tasks = evolab::generate_tasks(config);
    evolab::save_tasks(out, tasks);
    std::cout << tasks.size() << " tasks -> " << out << "\n";
  } catch (const evolab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
