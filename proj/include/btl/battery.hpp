#pragma once
// Seeded random test inputs: functions on a model, net sequences, Hardy windows.

#include <cstdint>
#include <vector>

#include "btl/calculus.hpp"

namespace btl {

enum class BatteryKind {
    White,      // iid normal point values
    Flat,       // iid normal spectral coefficients
    Decaying,   // coefficients damped by (1 + lambda)^{-1}
    Mixed       // cycles through the three above
};

// Mean-zero in homogeneous mode. Deterministic in (seed, count, kind).
std::vector<Vec> function_battery(const SpectralData& sd, int count, std::uint64_t seed,
                                  BatteryKind kind = BatteryKind::Mixed, Mode mode = Mode::Homogeneous);

// iid normal sequences of the given length.
std::vector<Vec> sequence_battery(int size, int count, std::uint64_t seed);

// Nonnegative sequences of the given length; every third one is sparse.
std::vector<std::vector<double>> hardy_battery(int length, int count, std::uint64_t seed);

}  // namespace btl
