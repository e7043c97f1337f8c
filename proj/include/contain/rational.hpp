#pragma once

#include <cstdint>
#include <string>

namespace contain {

struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    Rational() = default;
    Rational(int64_t n, int64_t d = 1);  // reduces; den == 0 throws InvalidConfig

    // floor(num * t / den), exact
    int64_t floor_times(int64_t t) const;
    // ceil(num * t / den), exact
    int64_t ceil_times(int64_t t) const;
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
};

// Parses "3", "3/2", "0.15", "-1/4".
Rational parse_rational(const std::string& s);

// Spreader budget g(t).
struct SpreadSpec {
    enum class Kind { Constant, PowerLaw, Unbounded };
    Kind kind = Kind::Unbounded;
    int64_t k = 0;           // Constant
    Rational coef{1};        // PowerLaw C
    Rational exponent{1};    // PowerLaw exp

    static SpreadSpec constant(int64_t k);
    static SpreadSpec power(Rational c, Rational e);
    static SpreadSpec unbounded();

    // floor(C * t^exp) via exact integer roots; Unbounded returns INT64_MAX
    int64_t budget(int64_t t) const;
    std::string str() const;
};

// Accepts "inf", "7", "C*t^(6/7)" with numeric C, "0.15*sqrt(t)", "2*t^(1/2)", "t^(1/2)".
SpreadSpec parse_spread(const std::string& s);

// floor(t*q) - floor((t-1)*q), or floor(t*q) - spent when accumulating
int64_t container_budget(const Rational& q, int64_t t, bool accumulating, int64_t spent);

}  // namespace contain
