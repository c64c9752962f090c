// Copyright 2026 The windowsum Authors
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

// Runs every acceptance criterion at full size and prints one line each.

#include <cstdio>

#include "windowsum/selftest.hpp"

int main() {
  const auto outcomes = windowsum::selftest::RunAll(windowsum::selftest::Level::kFull);
  int failed = 0;
  for (const auto& o : outcomes) {
    std::printf("%s %2d %-28s %s\n", o.pass ? "PASS" : "FAIL", o.id, o.name.c_str(),
                o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(outcomes.size()) - failed,
              outcomes.size());
  return failed == 0 ? 0 : 1;
}
