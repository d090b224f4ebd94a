// Copyright 2026 The qsimon Authors
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

#pragma once

// Brute-force reference implementations. Everything here is deliberately
// naive and shares no code with the library beyond plain integers.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace ref {

using Vec = std::vector<std::int64_t>;

inline std::int64_t ipow(std::int64_t b, std::size_t e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline Vec from_index(std::int64_t d, std::size_t n, std::uint64_t idx) {
    Vec v(n);
    for (std::size_t i = n; i-- > 0;) {
        v[i] = static_cast<std::int64_t>(idx % d);
        idx /= d;
    }
    return v;
}

inline std::uint64_t to_index(std::int64_t d, const Vec &v) {
    std::uint64_t idx = 0;
    for (auto x : v) idx = idx * d + x;
    return idx;
}

inline std::vector<Vec> all_vectors(std::int64_t d, std::size_t n) {
    std::vector<Vec> out;
    for (std::int64_t i = 0; i < ipow(d, n); ++i) out.push_back(from_index(d, n, i));
    return out;
}

inline Vec add(const Vec &a, const Vec &b, std::int64_t d) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % d;
    return r;
}

inline Vec scale(const Vec &a, std::int64_t k, std::int64_t d) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = ((a[i] * k) % d + d) % d;
    return r;
}

inline std::int64_t dot(const Vec &a, const Vec &b, std::int64_t d) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = (s + a[i] * b[i]) % d;
    return s;
}

inline bool is_zero(const Vec &a) {
    return std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; });
}

inline std::int64_t order(const Vec &a, std::int64_t d) {
    for (std::int64_t k = 1; k <= d; ++k) {
        if (is_zero(scale(a, k, d))) return k;
    }
    return d;
}

/// Subgroup generated by gens, by closing {0} under addition of each generator.
inline std::set<Vec> closure(const std::vector<Vec> &gens, std::int64_t d, std::size_t n) {
    std::set<Vec> h{Vec(n, 0)};
    std::vector<Vec> frontier{Vec(n, 0)};
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const auto &x : frontier) {
            for (const auto &g : gens) {
                auto y = add(x, g, d);
                if (h.insert(y).second) next.push_back(y);
            }
        }
        frontier = std::move(next);
    }
    return h;
}

inline std::set<Vec> annihilator(const std::vector<Vec> &samples, std::int64_t d,
                                 std::size_t n) {
    std::set<Vec> out;
    for (const auto &y : all_vectors(d, n)) {
        bool ok = true;
        for (const auto &s : samples) ok = ok && dot(y, s, d) == 0;
        if (ok) out.insert(y);
    }
    return out;
}

/// Smallest element of maximal order when h is cyclic, nothing otherwise.
inline std::optional<Vec> canonical(const std::set<Vec> &h, std::int64_t d) {
    std::int64_t best = 0;
    for (const auto &x : h) best = std::max(best, order(x, d));
    if (static_cast<std::size_t>(best) != h.size()) return std::nullopt;
    for (const auto &x : h) {
        if (order(x, d) == best) return x;
    }
    return std::nullopt;
}

inline Vec random_vec(std::mt19937_64 &rng, std::int64_t d, std::size_t n) {
    std::uniform_int_distribution<std::int64_t> u(0, d - 1);
    Vec v(n);
    for (auto &x : v) x = u(rng);
    return v;
}

inline Vec random_full_order(std::mt19937_64 &rng, std::int64_t d, std::size_t n) {
    for (;;) {
        auto v = random_vec(rng, d, n);
        if (order(v, d) == d) return v;
    }
}

/// Final first-register distribution of the Simon circuit for a lookup table.
/// With layered, the per-site transform is the Walsh-Hadamard on the bits of
/// each digit instead of the Fourier transform over Z_d.
inline std::vector<double> simon_distribution(const std::vector<std::uint64_t> &table,
                                              std::int64_t d, std::size_t n,
                                              bool layered = false) {
    const auto dim = table.size();
    std::map<std::uint64_t, std::vector<Vec>> fibers;
    for (std::uint64_t x = 0; x < dim; ++x) fibers[table[x]].push_back(from_index(d, n, x));
    std::vector<double> p(dim, 0.0);
    const double scale2 = 1.0 / (static_cast<double>(dim) * static_cast<double>(dim));
    for (std::uint64_t yi = 0; yi < dim; ++yi) {
        const auto y = from_index(d, n, yi);
        for (const auto &[value, members] : fibers) {
            std::complex<double> amp = 0.0;
            for (const auto &x : members) {
                if (layered) {
                    int bits = 0;
                    for (std::size_t j = 0; j < n; ++j) bits += std::popcount(static_cast<std::uint64_t>(x[j] & y[j]));
                    amp += (bits % 2 == 0) ? 1.0 : -1.0;
                } else {
                    const double angle = 2.0 * std::numbers::pi * static_cast<double>(dot(x, y, d)) /
                                         static_cast<double>(d);
                    amp += std::polar(1.0, angle);
                }
            }
            p[yi] += std::norm(amp) * scale2;
        }
    }
    return p;
}

/// Register-1 Fourier transform by direct summation over the whole register.
inline std::vector<std::complex<double>> dft_register1(const std::vector<std::complex<double>> &amps,
                                                       std::int64_t d, std::size_t n) {
    const auto dim = static_cast<std::uint64_t>(ipow(d, n));
    std::vector<std::complex<double>> out(amps.size());
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::uint64_t y = 0; y < dim; ++y) {
        const auto yv = from_index(d, n, y);
        for (std::uint64_t x = 0; x < dim; ++x) {
            const auto xv = from_index(d, n, x);
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(dot(xv, yv, d)) /
                                 static_cast<double>(d);
            const auto w = std::polar(norm, angle);
            for (std::uint64_t a = 0; a < dim; ++a) out[y * dim + a] += w * amps[x * dim + a];
        }
    }
    return out;
}

/// Mean number of uniform samples from Z_{p^k}^r needed to generate it. A set
/// generates iff its reduction mod p spans F_p^r.
inline double expected_spanning_samples(std::int64_t p, std::size_t r) {
    const double q = std::pow(static_cast<double>(p), static_cast<double>(r));
    double e = 0.0;
    for (std::size_t i = 0; i < r; ++i) e += q / (q - std::pow(static_cast<double>(p), static_cast<double>(i)));
    return e;
}

} // namespace ref
