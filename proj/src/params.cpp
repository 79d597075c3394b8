// SPDX-License-Identifier: Apache-2.0
#include "nonlocal/params.hpp"

#include <cmath>

#include "nonlocal/errors.hpp"

namespace nonlocal {

void ModelParams::validate() const {
    if (!(D >= 0.0)) throw ConfigError("D must be >= 0");
    if (!(L > 0.0)) throw ConfigError("L must be > 0");
    if (!(r > 0.0)) throw ConfigError("r must be > 0");
    if (r > L) throw ConfigError("r must not exceed L");
    if (!(tau > 0.0)) throw ConfigError("tau must be > 0");
    if (!(t_end >= 0.0)) throw ConfigError("t_end must be >= 0");
    if (N < 4) throw ConfigError("N must be >= 4");
    const double h = 2.0 * L / static_cast<double>(N);
    if (std::floor(r / h * (1.0 + 1e-12)) < 1.0) throw ConfigError("sensing radius r is below one mesh cell (floor(r/h) = 0)");
}

void TwoPopParams::validate() const {
    base().validate();
    if (!(Su >= 0.0) || !(Sv >= 0.0) || !(C >= 0.0)) throw ConfigError("Su, Sv and C must be >= 0");
}

}  // namespace nonlocal
