#include "btl/battery.hpp"

#include <random>

namespace btl {

std::vector<Vec> function_battery(const SpectralData& sd, int count, std::uint64_t seed, BatteryKind kind,
                                  Mode mode) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    const int n = sd.n();
    std::vector<Vec> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        BatteryKind kk = kind == BatteryKind::Mixed ? static_cast<BatteryKind>(k % 3) : kind;
        Vec f(n);
        if (kk == BatteryKind::White) {
            for (int x = 0; x < n; ++x) f(x) = nd(rng);
        } else {
            Vec c(n);
            for (int i = 0; i < n; ++i) c(i) = nd(rng);
            if (kk == BatteryKind::Decaying)
                for (int i = 0; i < n; ++i) c(i) /= 1.0 + sd.lambda(i);
            f = sd.from_coeffs(c);
        }
        out.push_back(mode == Mode::Homogeneous ? sd.project_mean_zero(f) : f);
    }
    return out;
}

std::vector<Vec> sequence_battery(int size, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<Vec> out;
    for (int k = 0; k < count; ++k) {
        Vec h(size);
        for (int i = 0; i < size; ++i) h(i) = nd(rng);
        out.push_back(h);
    }
    return out;
}

std::vector<std::vector<double>> hardy_battery(int length, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> ex(1.0);
    std::uniform_int_distribution<int> pos(0, length - 1);
    std::vector<std::vector<double>> out;
    for (int k = 0; k < count; ++k) {
        std::vector<double> a(length, 0.0);
        if (k % 3 == 2) {
            for (int t = 0; t < 3; ++t) a[pos(rng)] += ex(rng);
        } else {
            for (double& v : a) v = ex(rng);
        }
        out.push_back(a);
    }
    return out;
}

}  // namespace btl
