#pragma once
// Small helpers shared by the unit tests; oracles live in the test files.

#include <cmath>
#include <random>
#include <vector>

#include "btl/space.hpp"

namespace btltest {

inline btl::ModelSpace cycle(int n) {
    btl::ModelSpec s;
    s.kind = btl::GraphKind::Cycle;
    s.n = n;
    return btl::build_model(s);
}

inline btl::ModelSpace path(int n) {
    btl::ModelSpec s;
    s.kind = btl::GraphKind::Path;
    s.n = n;
    return btl::build_model(s);
}

inline btl::ModelSpace torus(int n) {
    btl::ModelSpec s;
    s.kind = btl::GraphKind::Torus;
    s.n = n;
    return btl::build_model(s);
}

// mean-zero iid normal functions, independent of the library battery
inline std::vector<btl::Vec> random_mean_zero(int n, int count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<btl::Vec> out;
    for (int k = 0; k < count; ++k) {
        btl::Vec f(n);
        for (int x = 0; x < n; ++x) f(x) = nd(rng);
        f.array() -= f.mean();
        out.push_back(f);
    }
    return out;
}

}  // namespace btltest
