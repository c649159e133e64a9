// SPDX-License-Identifier: Apache-2.0
#include "qzeno/format.hpp"

#include <charconv>
#include <cmath>

namespace qzeno {

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace qzeno
