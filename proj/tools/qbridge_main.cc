// Copyright 2026 The qbridge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "qbridge/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  qbridge::cli::Options options;
  const char* no_color = std::getenv("NO_COLOR");
  options.color = ::isatty(STDOUT_FILENO) && (no_color == nullptr || no_color[0] == '\0');
  return qbridge::cli::run(args, std::cout, std::cerr, options);
}
