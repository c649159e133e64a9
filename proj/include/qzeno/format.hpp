// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace qzeno {

/// Shortest decimal representation that round-trips the double exactly.
/// Deterministic across runs; used for all emitted numeric output.
std::string format_double(double v);

} // namespace qzeno
