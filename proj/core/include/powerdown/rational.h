#ifndef POWERDOWN_RATIONAL_H_
#define POWERDOWN_RATIONAL_H_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace powerdown {

using Rational = mpq_class;

/** Parses "p/q", "-p/q" or a plain integer. Throws ParseError otherwise. */
Rational ParseRational(std::string_view text);

/** "p/q", or "p" when the denominator is one. */
std::string FormatRational(const Rational& value);

std::int64_t Floor(const Rational& value);
std::int64_t Ceil(const Rational& value);

/** Fractional part in [0, 1). */
Rational FractionalPart(const Rational& value);

double ToDouble(const Rational& value);

}  // namespace powerdown

#endif  // POWERDOWN_RATIONAL_H_
