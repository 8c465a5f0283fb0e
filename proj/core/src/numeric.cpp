/*
 * Copyright 2026 The avgenergy Authors
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

#include "avgenergy/numeric.hpp"

#include <cctype>
#include <limits>

namespace avgen {

BigInt floor_div(const BigInt &a, const BigInt &b) {
    if (b == 0) throw std::domain_error("division by zero");
    BigInt q = a / b;
    BigInt r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

BigInt ceil_div(const BigInt &a, const BigInt &b) {
    if (b == 0) throw std::domain_error("division by zero");
    BigInt q = a / b;
    BigInt r = a % b;
    if (r != 0 && ((r < 0) == (b < 0))) ++q;
    return q;
}

BigInt floor(const Rational &r) {
    return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

BigInt ceil(const Rational &r) {
    return ceil_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

std::string to_string(const Rational &r) {
    const BigInt &d = boost::multiprecision::denominator(r);
    if (d == 1) return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" + d.str();
}

std::string to_string(const BigInt &i) { return i.str(); }

namespace {

bool parse_integer(std::string_view s, bool allow_sign, BigInt &out) {
    if (s.empty()) return false;
    bool neg = false;
    if (allow_sign && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
        if (s.empty()) return false;
    }
    BigInt v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        v = v * 10 + (c - '0');
    }
    out = neg ? BigInt(-v) : v;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    BigInt p, q = 1;
    auto slash = text.find('/');
    bool ok;
    if (slash == std::string_view::npos) {
        ok = parse_integer(text, true, p);
    } else {
        ok = parse_integer(text.substr(0, slash), true, p) &&
             parse_integer(text.substr(slash + 1), false, q);
    }
    if (!ok) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
}

bool fits_int64(const BigInt &i) {
    return i >= std::numeric_limits<std::int64_t>::min() &&
           i <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t to_int64(const BigInt &i) {
    if (!fits_int64(i)) throw ArithmeticOverflow("integer " + i.str() + " exceeds 64 bits");
    return static_cast<std::int64_t>(i);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("64-bit addition overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("64-bit multiplication overflow");
    return r;
}

Threshold::Threshold(BigInt t1, BigInt t2) : t1_(std::move(t1)), t2_(std::move(t2)) {
    if (t2_ <= 0) throw std::invalid_argument("threshold denominator must be positive");
    if (t1_ < 0) throw std::invalid_argument("threshold must be nonnegative");
    BigInt g = boost::multiprecision::gcd(t1_, t2_);
    if (g > 1) {
        t1_ /= g;
        t2_ /= g;
    }
    if (t1_ == 0) t2_ = 1;
}

Threshold Threshold::parse(std::string_view text) {
    if (text.find('.') != std::string_view::npos || text.find('e') != std::string_view::npos ||
        text.find('E') != std::string_view::npos)
        throw std::invalid_argument("threshold '" + std::string(text) +
                                    "' must be written as t1/t2 or an integer (no decimals)");
    Rational r = parse_rational(text);
    if (r < 0) throw std::invalid_argument("threshold must be nonnegative");
    return Threshold(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

Rational Threshold::tilde() const { return Rational(floor() + 1) - value(); }

std::string Threshold::str() const {
    return t2_ == 1 ? t1_.str() : t1_.str() + "/" + t2_.str();
}

std::string PayoffValue::str() const {
    switch (kind_) {
        case Kind::PlusInfinity: return "+inf";
        case Kind::MinusInfinity: return "-inf";
        default: return to_string(value_);
    }
}

bool operator<(const PayoffValue &a, const PayoffValue &b) {
    using K = PayoffValue::Kind;
    if (a.kind_ == b.kind_) return a.kind_ == K::Finite && a.value_ < b.value_;
    if (a.kind_ == K::MinusInfinity) return true;
    if (b.kind_ == K::PlusInfinity) return true;
    return false;
}

}  // namespace avgen
