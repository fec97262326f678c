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

#include "fairgames/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace fairgames {

Integer
parse_integer(std::string_view text)
{
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        neg = text[i] == '-';
        i++;
    }
    if (i == text.size())
        throw std::invalid_argument("expected integer, got '" + std::string(text) + "'");
    Integer v = 0;
    for (; i < text.size(); i++) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw std::invalid_argument("expected integer, got '" + std::string(text) + "'");
        v = v * 10 + (text[i] - '0');
    }
    return neg ? Integer(-v) : v;
}

Rational::Rational(Integer num, Integer den)
{
    if (den == 0)
        throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Integer g = boost::multiprecision::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = std::move(num);
    den_ = std::move(den);
}

Integer
Rational::floor() const
{
    Integer q = num_ / den_;
    if (num_ < 0 && q * den_ != num_)
        q -= 1;
    return q;
}

Integer
Rational::ceil() const
{
    Integer q = num_ / den_;
    if (num_ > 0 && q * den_ != num_)
        q += 1;
    return q;
}

std::string
Rational::to_string() const
{
    if (den_ == 1)
        return num_.str();
    return num_.str() + "/" + den_.str();
}

std::string
Rational::to_fraction_string() const
{
    return num_.str() + "/" + den_.str();
}

Rational
Rational::parse(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    auto den_text = text.substr(slash + 1);
    if (den_text.empty() || den_text[0] == '-' || den_text[0] == '+')
        throw std::invalid_argument("denominator must be a positive integer: '" + std::string(text) + "'");
    Integer den = parse_integer(den_text);
    if (den == 0)
        throw std::invalid_argument("denominator must be a positive integer: '" + std::string(text) + "'");
    return Rational(std::move(num), std::move(den));
}

Rational
operator+(const Rational& a, const Rational& b)
{
    if (a.den_ == 1 && b.den_ == 1)
        return Rational(a.num_ + b.num_, Integer(1), Rational::Normalized{});
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational
operator-(const Rational& a, const Rational& b)
{
    return a + (-b);
}

Rational
operator*(const Rational& a, const Rational& b)
{
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational
operator/(const Rational& a, const Rational& b)
{
    if (b.num_ == 0)
        throw std::domain_error("division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering
operator<=>(const Rational& a, const Rational& b)
{
    Integer lhs = a.num_ * b.den_;
    Integer rhs = b.num_ * a.den_;
    if (lhs < rhs)
        return std::strong_ordering::less;
    if (lhs > rhs)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

} // namespace fairgames
