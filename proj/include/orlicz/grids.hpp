#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "orlicz/geometry.hpp"
#include "orlicz/rng.hpp"

namespace orlicz {

// Direction-grid specs:
//   grid:fibonacci:<count>             spherical Fibonacci lattice, n = 3
//   grid:uniform-angle:<count>         equally spaced angles, n = 2
//   grid:seeded-gaussian:<count>:<seed>  normalized Gaussian draws, any n
inline std::vector<Vector> make_grid(int dim, std::string_view spec) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("grid spec '" + std::string(spec) + "': " + why);
    };
    if (spec.substr(0, 5) != "grid:") fail("must start with 'grid:'");
    auto rest = spec.substr(5);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) fail("missing point count");
    std::string kind(rest.substr(0, colon));
    auto args = rest.substr(colon + 1);

    auto parse_int = [&](std::string_view s) {
        try {
            return std::stoll(std::string(s));
        } catch (...) {
            fail("bad integer '" + std::string(s) + "'");
            return 0LL;
        }
    };

    std::vector<Vector> dirs;
    if (kind == "fibonacci") {
        if (dim != 3) fail("fibonacci grid requires dimension 3");
        long long count = parse_int(args);
        if (count < 1) fail("count must be positive");
        const double golden_angle = 2.399963229728653;  // pi (3 - sqrt 5)
        for (long long i = 0; i < count; ++i) {
            double z = 1.0 - (2.0 * i + 1.0) / count;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double t = golden_angle * i;
            Vector v(3);
            v << r * std::cos(t), r * std::sin(t), z;
            dirs.push_back(v);
        }
    } else if (kind == "uniform-angle") {
        if (dim != 2) fail("uniform-angle grid requires dimension 2");
        long long count = parse_int(args);
        if (count < 1) fail("count must be positive");
        for (long long i = 0; i < count; ++i) {
            double t = 2.0 * M_PI * i / count;
            Vector v(2);
            v << std::cos(t), std::sin(t);
            dirs.push_back(v);
        }
    } else if (kind == "seeded-gaussian") {
        auto colon2 = args.find(':');
        if (colon2 == std::string_view::npos) fail("seeded-gaussian needs <count>:<seed>");
        long long count = parse_int(args.substr(0, colon2));
        long long seed = parse_int(args.substr(colon2 + 1));
        if (count < 1) fail("count must be positive");
        SplitMix64 rng(static_cast<std::uint64_t>(seed));
        while (static_cast<long long>(dirs.size()) < count) {
            Vector v(dim);
            for (int k = 0; k < dim; ++k) v(k) = rng.gaussian();
            double norm = v.norm();
            if (norm < 1e-8) continue;
            dirs.push_back(v / norm);
        }
    } else {
        fail("unknown grid kind '" + kind + "'");
    }
    return dirs;
}

// Grid for law checks: the requested grid plus the signed axis directions and
// the normalized two-axis diagonals, where supports are evaluated exactly.
inline std::vector<Vector> law_grid(int dim, std::string_view spec) {
    auto dirs = make_grid(dim, spec);
    for (int i = 0; i < dim; ++i) {
        Vector e = Vector::Zero(dim);
        e(i) = 1.0;
        dirs.push_back(e);
        dirs.push_back(-e);
        for (int j = i + 1; j < dim; ++j) {
            Vector f = Vector::Zero(dim);
            f(i) = f(j) = 1.0 / std::sqrt(2.0);
            dirs.push_back(f);
            dirs.push_back(-f);
        }
    }
    return dirs;
}

}  // namespace orlicz
