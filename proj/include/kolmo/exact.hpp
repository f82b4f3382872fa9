#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace kolmo {

/// Parse "16", "2.5", or "3/4" into an exact rational. Throws ParseError.
mpq_class parse_rational(const std::string& text);

mpz_class floor_q(const mpq_class& q);
mpz_class ceil_q(const mpq_class& q);

/// 2^e as an exact rational, e may be negative.
mpq_class pow2_q(long e);

mpz_class pow2_z(unsigned long e);

/// Lowest-terms "p/q" (always with an explicit denominator, e.g. "1/1").
std::string rational_string(const mpq_class& q);

/// Shortest decimal for reports; exact for integers and dyadics, else
/// falls back to the p/q form.
std::string rational_display(const mpq_class& q);

double to_double(const mpq_class& q);

}  // namespace kolmo
