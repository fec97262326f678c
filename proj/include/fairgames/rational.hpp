/*
 * Copyright 2026 The fairgames Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fairgames {

/// Arbitrary-precision integer used for all edge weights and credits.
using Integer = boost::multiprecision::cpp_int;

/// Parses an optionally signed decimal integer. Throws std::invalid_argument.
Integer parse_integer(std::string_view text);

/**
 * Exact rational number kept in lowest terms with a positive denominator.
 */
class Rational
{
public:
    Rational() : num_(0), den_(1) {}
    Rational(Integer num) : num_(std::move(num)), den_(1) {}
    Rational(std::int64_t num) : num_(num), den_(1) {}
    Rational(int num) : num_(num), den_(1) {}
    Rational(Integer num, Integer den);

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }

    bool is_integer() const { return den_ == 1; }

    /// Largest integer not above the value.
    Integer floor() const;
    /// Smallest integer not below the value.
    Integer ceil() const;

    /// "a" when the denominator is one, otherwise "a/b".
    std::string to_string() const;
    /// Always "a/b", including "a/1".
    std::string to_fraction_string() const;

    /// Accepts "<int>" or "<int>/<posint>".
    static Rational parse(std::string_view text);

    Rational operator-() const { return Rational(-num_, den_, Normalized{}); }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }

    friend bool operator==(const Rational& a, const Rational& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    friend std::ostream& operator<<(std::ostream& os, const Rational& r)
    {
        return os << r.to_string();
    }

private:
    struct Normalized {};
    Rational(Integer num, Integer den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}

    Integer num_;
    Integer den_;
};

namespace detail {

// Largest k in [0, kmax] with pred(k); pred(0) is assumed true and pred is
// monotone (true then false).
template <typename Pred>
Integer gallop_last_true(const Integer& kmax, Pred&& pred)
{
    if (kmax == 0)
        return 0;
    Integer good = 0;
    Integer step = 1;
    Integer bad = kmax + 1;
    while (true) {
        Integer probe = good + step;
        if (probe > kmax) {
            break;
        }
        if (pred(probe)) {
            good = probe;
            step *= 2;
        } else {
            bad = probe;
            break;
        }
    }
    while (bad - good > 1) {
        Integer mid = (good + bad) / 2;
        if (pred(mid))
            good = mid;
        else
            bad = mid;
    }
    return good;
}

} // namespace detail

/**
 * Stern–Brocot search for the largest fraction with denominator at most
 * max_den in [lo, hi] satisfying a monotone predicate.
 *
 * holds(r) must be true on a down-closed set of rationals and holds(lo)
 * must be true. Every probe passed to holds() has denominator <= max_den.
 * Runs in O(log(hi-lo) + log^2(max_den)) probes.
 */
template <typename Pred>
Rational largest_satisfying(const Integer& lo, const Integer& hi, const Integer& max_den, Pred&& holds)
{
    // integer part
    Integer good = lo;
    Integer bad = hi + 1;
    if (holds(Rational(hi)))
        return Rational(hi);
    bad = hi;
    while (bad - good > 1) {
        Integer mid = good + (bad - good) / 2;
        if (holds(Rational(mid)))
            good = mid;
        else
            bad = mid;
    }

    // Invariant: left holds, right fails, right.p*left.q - left.p*right.q = 1.
    Integer lp = good, lq = 1, rp = good + 1, rq = 1;
    while (lq + rq <= max_den) {
        Integer kmax = (max_den - lq) / rq;
        Integer k = detail::gallop_last_true(kmax, [&](const Integer& j) {
            return holds(Rational(lp + j * rp, lq + j * rq));
        });
        if (k > 0) {
            lp += k * rp;
            lq += k * rq;
        }
        if (lq + rq > max_den)
            break;
        Integer jmax = (max_den - rq) / lq;
        Integer j = detail::gallop_last_true(jmax, [&](const Integer& i) {
            return !holds(Rational(i * lp + rp, i * lq + rq));
        });
        if (j > 0) {
            rp += j * lp;
            rq += j * lq;
        }
    }
    return Rational(lp, lq);
}

} // namespace fairgames
