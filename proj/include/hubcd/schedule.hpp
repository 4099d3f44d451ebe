// Copyright 2026 hubcd contributors
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

#pragma once

#include <cmath>
#include <stdexcept>

namespace hubcd {

// Nested-sine ramp lambda(t) = sin^2((pi/2) sin^2(pi t / 2T)). It rises
// monotonically from 0 to 1 with vanishing first derivative at both ends.
struct Schedule {
  double total_time = 0;
  double dt = 0;
  int n_steps = 0;

  Schedule(double total_time_, double dt_)
      : total_time(total_time_), dt(dt_) {
    if (!(total_time_ > 0) || !(dt_ > 0))
      throw std::invalid_argument("Schedule: times must be positive");
    const double steps = total_time_ / dt_;
    n_steps = static_cast<int>(std::lround(steps));
    if (n_steps < 1 ||
        std::abs(n_steps * dt_ - total_time_) > 1e-9 * std::max(1.0, total_time_))
      throw std::invalid_argument(
          "Schedule: total_time must be an integer multiple of dt");
  }

  double lambda(double t) const {
    const double inner = std::sin(M_PI * t / (2 * total_time));
    const double s = std::sin(M_PI_2 * inner * inner);
    return s * s;
  }

  double lambda_dot(double t) const {
    const double inner = std::sin(M_PI * t / (2 * total_time));
    return (M_PI * M_PI / (4 * total_time)) *
           std::sin(M_PI * inner * inner) * std::sin(M_PI * t / total_time);
  }

  // Midpoint of step j, j = 1..n_steps.
  double midpoint(int j) const {
    if (j < 1 || j > n_steps)
      throw std::out_of_range("Schedule::midpoint: step out of range");
    return (j - 0.5) * dt;
  }
};

}  // namespace hubcd
