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

#include "qsimon/zmod.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <utility>

#include "qsimon/errors.hpp"

namespace qsimon {

namespace {

using i64 = std::int64_t;

i64 reduce(i64 v, i64 d) {
    v %= d;
    return v < 0 ? v + d : v;
}

__extension__ using i128 = __int128;

i64 mulmod(i64 a, i64 b, i64 d) {
    return reduce(static_cast<i64>(static_cast<i128>(a) * b % d), d);
}

struct Egcd {
    i64 g, x, y;
};

// a*x + b*y = g with a, b >= 0, not both zero. Prefers the trivial
// combination when a already divides b so that an existing pivot is kept.
Egcd egcd(i64 a, i64 b) {
    if (a != 0 && b % a == 0) {
        return {a, 1, 0};
    }
    i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const i64 q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
        old_t = std::exchange(t, old_t - q * t);
    }
    return {old_r, old_s, old_t};
}

void require_compatible(const ZVec &a, const ZVec &b) {
    if (a.modulus() != b.modulus() || a.size() != b.size()) {
        fail(ErrorKind::DimensionMismatch,
             "vectors differ in modulus or length: " + to_text(a) + " vs " +
                 to_text(b));
    }
}

void require_shape(Modulus m, std::size_t n, std::span<const ZVec> vs) {
    for (const auto &v : vs) {
        if (v.modulus() != m || v.size() != n) {
            fail(ErrorKind::DimensionMismatch,
                 "vector " + to_text(v) + " is not in Z_" +
                     std::to_string(m.value()) + "^" + std::to_string(n));
        }
    }
}

// Dense matrix over Z_d with the row/column operations used by the
// diagonalization.
class Matrix {
  public:
    Matrix(std::size_t rows, std::size_t cols, i64 d)
        : rows_(rows), cols_(cols), d_(d), data_(rows * cols, 0) {}

    static Matrix identity(std::size_t n, i64 d) {
        Matrix m(n, n, d);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = d == 1 ? 0 : 1;
        }
        return m;
    }

    i64 &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    i64 operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }
    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    // (row_i, row_k) <- (p row_i + q row_k, r row_i + s row_k)
    void row_combine(std::size_t i, std::size_t k, i64 p, i64 q, i64 r,
                     i64 s) {
        for (std::size_t c = 0; c < cols_; ++c) {
            const i64 a = (*this)(i, c), b = (*this)(k, c);
            (*this)(i, c) = reduce(mulmod(p, a, d_) + mulmod(q, b, d_), d_);
            (*this)(k, c) = reduce(mulmod(r, a, d_) + mulmod(s, b, d_), d_);
        }
    }

    // (col_i, col_k) <- (p col_i + q col_k, r col_i + s col_k)
    void col_combine(std::size_t i, std::size_t k, i64 p, i64 q, i64 r,
                     i64 s) {
        for (std::size_t row = 0; row < rows_; ++row) {
            const i64 a = (*this)(row, i), b = (*this)(row, k);
            (*this)(row, i) = reduce(mulmod(p, a, d_) + mulmod(q, b, d_), d_);
            (*this)(row, k) = reduce(mulmod(r, a, d_) + mulmod(s, b, d_), d_);
        }
    }

    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t c = 0; c < cols_; ++c) {
            std::swap((*this)(i, c), (*this)(k, c));
        }
    }
    void swap_cols(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t r = 0; r < rows_; ++r) {
            std::swap((*this)(r, i), (*this)(r, k));
        }
    }

  private:
    std::size_t rows_, cols_;
    i64 d_;
    std::vector<i64> data_;
};

// U * A * V = diag(pivots) mod d with U, V invertible over Z_d. Only V and
// its inverse are kept; row operations never need to be replayed.
struct Diagonalization {
    std::vector<i64> pivots; // length n; zero past the rank
    Matrix v;
    Matrix v_inv;
};

Diagonalization diagonalize(Matrix a, i64 d) {
    const std::size_t m = a.rows(), n = a.cols();
    Matrix v = Matrix::identity(n, d);
    Matrix v_inv = Matrix::identity(n, d);
    std::vector<i64> pivots(n, 0);

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        std::size_t pr = m, pc = n;
        for (std::size_t r = t; r < m && pr == m; ++r) {
            for (std::size_t c = t; c < n; ++c) {
                if (a(r, c) != 0) {
                    pr = r;
                    pc = c;
                    break;
                }
            }
        }
        if (pr == m) {
            break;
        }
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);
        v.swap_cols(t, pc);
        v_inv.swap_rows(t, pc);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t r = t + 1; r < m; ++r) {
                if (a(r, t) == 0) continue;
                const i64 p = a(t, t), b = a(r, t);
                const auto [g, x, y] = egcd(p, b);
                a.row_combine(t, r, reduce(x, d), reduce(y, d),
                              reduce(-(b / g), d), reduce(p / g, d));
            }
            for (std::size_t c = t + 1; c < n; ++c) {
                if (a(t, c) == 0) continue;
                const i64 p = a(t, t), b = a(t, c);
                const auto [g, x, y] = egcd(p, b);
                const i64 pg = reduce(p / g, d), bg = reduce(b / g, d);
                const i64 xr = reduce(x, d), yr = reduce(y, d);
                a.col_combine(t, c, xr, yr, reduce(-(b / g), d), pg);
                v.col_combine(t, c, xr, yr, reduce(-(b / g), d), pg);
                // Inverse of the column transform, applied to rows.
                v_inv.row_combine(t, c, pg, bg, reduce(-y, d), xr);
                if (g != p) {
                    dirty = true;
                }
            }
        }
        pivots[t] = a(t, t);
    }
    return {std::move(pivots), std::move(v), std::move(v_inv)};
}

Matrix rows_to_matrix(i64 d, std::size_t n, std::span<const ZVec> rows) {
    Matrix a(rows.size(), n, d);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            a(r, c) = rows[r][c];
        }
    }
    return a;
}

i64 factor_order(i64 pivot, i64 d) { return d / std::gcd(pivot, d); }

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        fail(ErrorKind::Domain, "group size does not fit in 64 bits");
    }
    return out;
}

char digit_char(Digit v) {
    return static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10));
}

} // namespace

Modulus::Modulus(std::int64_t d) : d_(d) {
    if (d < 2 || d > kMax) {
        fail(ErrorKind::Domain, "modulus must lie in [2, " +
                                    std::to_string(kMax) + "], got " +
                                    std::to_string(d));
    }
}

bool Modulus::is_prime() const noexcept {
    if (d_ < 4) return true;
    if (d_ % 2 == 0) return false;
    for (std::int64_t p = 3; p * p <= d_; p += 2) {
        if (d_ % p == 0) return false;
    }
    return true;
}

ZVec::ZVec(Modulus modulus, std::vector<Digit> entries)
    : modulus_(modulus), entries_(std::move(entries)) {
    if (entries_.empty()) {
        fail(ErrorKind::Domain, "ZVec length must be at least 1");
    }
    for (auto e : entries_) {
        if (e < 0 || e >= modulus_.value()) {
            fail(ErrorKind::Domain, "entry " + std::to_string(e) +
                                        " outside [0, " +
                                        std::to_string(modulus_.value()) + ")");
        }
    }
}

ZVec ZVec::zero(Modulus modulus, std::size_t n) {
    return ZVec(modulus, std::vector<Digit>(n, 0));
}

ZVec ZVec::from_index(Modulus modulus, std::size_t n, std::uint64_t index) {
    const auto d = static_cast<std::uint64_t>(modulus.value());
    std::vector<Digit> e(n, 0);
    for (std::size_t i = n; i-- > 0;) {
        e[i] = static_cast<Digit>(index % d);
        index /= d;
    }
    if (index != 0) {
        fail(ErrorKind::IndexOutOfRange, "index does not fit in Z_d^n");
    }
    return ZVec(modulus, std::move(e));
}

bool ZVec::is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](Digit e) { return e == 0; });
}

std::uint64_t ZVec::to_index() const {
    const auto d = static_cast<std::uint64_t>(modulus_.value());
    std::uint64_t idx = 0;
    for (auto e : entries_) {
        idx = checked_mul(idx, d) + static_cast<std::uint64_t>(e);
    }
    return idx;
}

ZVec ZVec::operator+(const ZVec &rhs) const {
    require_compatible(*this, rhs);
    std::vector<Digit> e(size());
    for (std::size_t i = 0; i < size(); ++i) {
        e[i] = (entries_[i] + rhs.entries_[i]) % d();
    }
    return ZVec(modulus_, std::move(e));
}

ZVec ZVec::operator-(const ZVec &rhs) const {
    require_compatible(*this, rhs);
    std::vector<Digit> e(size());
    for (std::size_t i = 0; i < size(); ++i) {
        e[i] = reduce(entries_[i] - rhs.entries_[i], d());
    }
    return ZVec(modulus_, std::move(e));
}

ZVec ZVec::operator-() const { return scaled(-1); }

ZVec ZVec::scaled(std::int64_t k) const {
    std::vector<Digit> e(size());
    const i64 kr = reduce(k, d());
    for (std::size_t i = 0; i < size(); ++i) {
        e[i] = mulmod(kr, entries_[i], d());
    }
    return ZVec(modulus_, std::move(e));
}

std::strong_ordering ZVec::operator<=>(const ZVec &rhs) const {
    if (auto c = modulus_.value() <=> rhs.modulus_.value(); c != 0) {
        return c;
    }
    return std::lexicographical_compare_three_way(
        entries_.begin(), entries_.end(), rhs.entries_.begin(),
        rhs.entries_.end());
}

std::uint64_t checked_power(std::uint64_t base, std::size_t exponent) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        out = checked_mul(out, base);
    }
    return out;
}

Digit inner_product(const ZVec &x, const ZVec &y) {
    require_compatible(x, y);
    const i64 d = x.d();
    i64 acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc = (acc + mulmod(x[i], y[i], d)) % d;
    }
    return acc;
}

std::int64_t order_of(const ZVec &s) {
    if (s.is_zero()) {
        fail(ErrorKind::DegenerateShift, "the zero vector has no order");
    }
    i64 g = s.d();
    for (auto e : s.entries()) {
        g = std::gcd(g, e);
    }
    return s.d() / g;
}

std::uint64_t SubgroupStructure::size() const {
    std::uint64_t out = 1;
    for (auto o : elementary_divisors) {
        out = checked_mul(out, static_cast<std::uint64_t>(o));
    }
    return out;
}

SubgroupStructure subgroup_structure(Modulus modulus, std::size_t n,
                                     std::span<const ZVec> generators) {
    require_shape(modulus, n, generators);
    const i64 d = modulus.value();
    SubgroupStructure out;
    if (generators.empty()) {
        return out;
    }
    auto diag = diagonalize(rows_to_matrix(d, n, generators), d);

    // Row t of D * V^{-1} is pivot_t times row t of V^{-1}; these rows
    // generate the same subgroup as the input.
    for (std::size_t t = 0; t < n; ++t) {
        const i64 p = diag.pivots[t];
        if (p == 0) continue;
        const i64 ord = factor_order(p, d);
        if (ord == 1) continue;
        std::vector<Digit> e(n);
        for (std::size_t c = 0; c < n; ++c) {
            e[c] = mulmod(p, diag.v_inv(t, c), d);
        }
        out.generators.emplace_back(modulus, std::move(e));
        out.orders.push_back(ord);
    }

    auto divisors = out.orders;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        for (std::size_t j = i + 1; j < divisors.size(); ++j) {
            const i64 g = std::gcd(divisors[i], divisors[j]);
            const i64 l = divisors[i] / g * divisors[j];
            divisors[i] = g;
            divisors[j] = l;
        }
    }
    std::erase(divisors, i64{1});
    out.elementary_divisors = std::move(divisors);
    return out;
}

std::uint64_t submodule_size(std::span<const ZVec> generators) {
    if (generators.empty()) {
        return 1;
    }
    return subgroup_structure(generators.front().modulus(),
                              generators.front().size(), generators)
        .size();
}

std::vector<ZVec> annihilator(Modulus modulus, std::size_t n,
                              std::span<const ZVec> samples) {
    require_shape(modulus, n, samples);
    const i64 d = modulus.value();
    std::vector<ZVec> out;
    if (samples.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Digit> e(n, 0);
            e[i] = 1;
            out.emplace_back(modulus, std::move(e));
        }
        return out;
    }
    auto diag = diagonalize(rows_to_matrix(d, n, samples), d);
    // A s = 0  <=>  D t = 0 with t = V^{-1} s, so t_i ranges over the
    // multiples of d / gcd(pivot_i, d) and s = V t.
    for (std::size_t i = 0; i < n; ++i) {
        // Smallest c with pivot * c = 0 mod d; a zero pivot leaves t_i free.
        const i64 multiplier =
            diag.pivots[i] == 0 ? 1 : factor_order(diag.pivots[i], d);
        if (multiplier == d) continue;
        std::vector<Digit> e(n);
        bool nonzero = false;
        for (std::size_t r = 0; r < n; ++r) {
            e[r] = mulmod(multiplier, diag.v(r, i), d);
            nonzero = nonzero || e[r] != 0;
        }
        if (nonzero) {
            out.emplace_back(modulus, std::move(e));
        }
    }
    return out;
}

std::variant<ZVec, NotCyclic>
canonical_generator(Modulus modulus, std::size_t n,
                    std::span<const ZVec> generators) {
    auto structure = subgroup_structure(modulus, n, generators);
    if (structure.elementary_divisors.empty()) {
        fail(ErrorKind::DegenerateResult,
             "trivial subgroup: no nonzero shift can be recovered");
    }
    if (!structure.is_cyclic()) {
        return NotCyclic{structure.elementary_divisors};
    }
    // Cyclic means the direct-sum factors have pairwise coprime orders, so
    // their sum generates the whole group.
    ZVec g = ZVec::zero(modulus, n);
    for (const auto &b : structure.generators) {
        g = g + b;
    }
    const i64 order = structure.elementary_divisors.front();
    ZVec best = g;
    for (i64 u = 2; u < order; ++u) {
        if (std::gcd(u, order) != 1) continue;
        ZVec cand = g.scaled(u);
        if (cand < best) {
            best = std::move(cand);
        }
    }
    return best;
}

std::vector<ZVec> enumerate_subgroup(Modulus modulus, std::size_t n,
                                     std::span<const ZVec> generators) {
    require_shape(modulus, n, generators);
    const auto total = checked_power(static_cast<std::uint64_t>(modulus.value()), n);
    if (total > kEnumerationLimit) {
        fail(ErrorKind::Capacity, "enumeration refused: d^n = " +
                                      std::to_string(total) + " exceeds " +
                                      std::to_string(kEnumerationLimit));
    }
    std::vector<char> seen(total, 0);
    std::vector<std::uint64_t> frontier{0};
    seen[0] = 1;
    std::vector<ZVec> elements{ZVec::zero(modulus, n)};
    while (!frontier.empty()) {
        std::vector<std::uint64_t> next;
        for (auto idx : frontier) {
            const ZVec x = ZVec::from_index(modulus, n, idx);
            for (const auto &g : generators) {
                ZVec y = x + g;
                const auto yi = y.to_index();
                if (!seen[yi]) {
                    seen[yi] = 1;
                    next.push_back(yi);
                    elements.push_back(std::move(y));
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(elements.begin(), elements.end());
    return elements;
}

std::uint64_t submodule_size_enumerated(Modulus modulus, std::size_t n,
                                        std::span<const ZVec> generators) {
    return enumerate_subgroup(modulus, n, generators).size();
}

std::vector<ZVec> annihilator_enumerated(Modulus modulus, std::size_t n,
                                         std::span<const ZVec> samples) {
    require_shape(modulus, n, samples);
    const auto total = checked_power(static_cast<std::uint64_t>(modulus.value()), n);
    if (total > kEnumerationLimit) {
        fail(ErrorKind::Capacity, "enumeration refused: d^n = " +
                                      std::to_string(total) + " exceeds " +
                                      std::to_string(kEnumerationLimit));
    }
    std::vector<ZVec> out;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        ZVec s = ZVec::from_index(modulus, n, idx);
        const bool ok = std::all_of(samples.begin(), samples.end(),
                                    [&](const ZVec &y) {
                                        return inner_product(y, s) == 0;
                                    });
        if (ok) {
            out.push_back(std::move(s));
        }
    }
    return out;
}

ConstraintSet::ConstraintSet(Modulus modulus, std::size_t n)
    : modulus_(modulus), n_(n) {
    if (n == 0) {
        fail(ErrorKind::Domain, "constraint length must be at least 1");
    }
}

ConstraintSet::Extended ConstraintSet::extend(const ZVec &y) const {
    if (y.modulus() != modulus_ || y.size() != n_) {
        fail(ErrorKind::DimensionMismatch,
             "sample " + to_text(y) + " does not match the constraint set");
    }
    ConstraintSet next = *this;
    next.samples_.push_back(y);
    next.size_ = subgroup_structure(modulus_, n_, next.samples_).size();
    const bool grew = next.size_ > size_;
    return {std::move(next), grew};
}

std::string digits_to_text(const ZVec &v) {
    std::string out;
    if (v.d() <= 36) {
        for (auto e : v.entries()) {
            out.push_back(digit_char(e));
        }
        return out;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out.push_back('.');
        out += std::to_string(v[i]);
    }
    return out;
}

std::string to_text(const ZVec &v) {
    return "d" + std::to_string(v.d()) + ":" + digits_to_text(v);
}

ZVec parse_digits(Modulus modulus, std::string_view digits) {
    const i64 d = modulus.value();
    std::vector<Digit> e;
    auto bad = [&](const std::string &why) {
        fail(ErrorKind::Parse, "invalid digit string '" + std::string(digits) +
                                   "' for d=" + std::to_string(d) + ": " + why);
    };
    if (digits.empty()) bad("empty");
    if (d <= 36) {
        for (char ch : digits) {
            const auto c = static_cast<unsigned char>(std::tolower(ch));
            i64 v = -1;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (c >= 'a' && c <= 'z') v = c - 'a' + 10;
            if (v < 0 || v >= d) bad(std::string("digit '") + ch + "'");
            e.push_back(v);
        }
    } else {
        std::size_t pos = 0;
        while (pos <= digits.size()) {
            const auto dot = digits.find('.', pos);
            const auto part = digits.substr(pos, dot == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : dot - pos);
            i64 v = -1;
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
            if (ec != std::errc() || ptr != part.data() + part.size() || v < 0 ||
                v >= d) {
                bad("component '" + std::string(part) + "'");
            }
            e.push_back(v);
            if (dot == std::string_view::npos) break;
            pos = dot + 1;
        }
    }
    return ZVec(modulus, std::move(e));
}

ZVec parse_zvec(std::string_view text) {
    const auto colon = text.find(':');
    if (text.size() < 3 || (text[0] != 'd' && text[0] != 'D') ||
        colon == std::string_view::npos) {
        fail(ErrorKind::Parse, "expected a vector like d4:2031, got '" +
                                   std::string(text) + "'");
    }
    i64 d = 0;
    auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + colon, d);
    if (ec != std::errc() || ptr != text.data() + colon) {
        fail(ErrorKind::Parse, "bad modulus in '" + std::string(text) + "'");
    }
    if (d < 2 || d > Modulus::kMax) {
        fail(ErrorKind::Parse, "modulus out of range in '" + std::string(text) + "'");
    }
    return parse_digits(Modulus(d), text.substr(colon + 1));
}

} // namespace qsimon
