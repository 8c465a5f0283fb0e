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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace avgen {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/** Thrown when an exact quantity does not fit the machine integers used by a solver. */
class ArithmeticOverflow : public std::overflow_error {
  public:
    using std::overflow_error::overflow_error;
};

BigInt floor_div(const BigInt &a, const BigInt &b);
BigInt ceil_div(const BigInt &a, const BigInt &b);
BigInt floor(const Rational &r);
BigInt ceil(const Rational &r);

/** Renders "p/q", or "p" when the denominator is one. */
std::string to_string(const Rational &r);
std::string to_string(const BigInt &i);

/** Parses "p/q" or "p" (optionally signed); throws std::invalid_argument otherwise. */
Rational parse_rational(std::string_view text);

std::int64_t to_int64(const BigInt &i);
bool fits_int64(const BigInt &i);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/**
 * A nonnegative rational threshold t = t1/t2, kept in lowest terms.
 */
class Threshold {
  public:
    Threshold() : t1_(0), t2_(1) {}
    Threshold(BigInt t1, BigInt t2);
    explicit Threshold(std::int64_t integral) : Threshold(BigInt(integral), BigInt(1)) {}

    /** Accepts "t1/t2" or a plain integer. Decimal notation is rejected. */
    static Threshold parse(std::string_view text);

    const BigInt &t1() const { return t1_; }
    const BigInt &t2() const { return t2_; }
    Rational value() const { return Rational(t1_, t2_); }

    BigInt floor() const { return t1_ / t2_; }
    BigInt ceil() const { return (t1_ + t2_ - 1) / t2_; }
    bool is_integer() const { return t2_ == 1; }

    /** floor(t) + 1 - t, in (0, 1]. */
    Rational tilde() const;

    std::string str() const;

    friend bool operator==(const Threshold &a, const Threshold &b) {
        return a.t1_ == b.t1_ && a.t2_ == b.t2_;
    }

  private:
    BigInt t1_;
    BigInt t2_;
};

/**
 * Exact rational extended with the two signed infinities.
 */
class PayoffValue {
  public:
    enum class Kind { Finite, PlusInfinity, MinusInfinity };

    PayoffValue() = default;
    PayoffValue(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}
    static PayoffValue plus_infinity() { return PayoffValue(Kind::PlusInfinity); }
    static PayoffValue minus_infinity() { return PayoffValue(Kind::MinusInfinity); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    /** Only meaningful when finite. */
    const Rational &value() const { return value_; }

    /** "+inf", "-inf" or the rational in "p/q" form. */
    std::string str() const;

    friend bool operator==(const PayoffValue &a, const PayoffValue &b) {
        return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
    }
    friend bool operator<(const PayoffValue &a, const PayoffValue &b);
    friend bool operator<=(const PayoffValue &a, const PayoffValue &b) { return !(b < a); }

  private:
    explicit PayoffValue(Kind k) : kind_(k) {}
    Kind kind_ = Kind::Finite;
    Rational value_{0};
};

}  // namespace avgen
