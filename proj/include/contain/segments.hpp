#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "contain/rational.hpp"

namespace contain {

struct HSchedule {
    enum class Kind { Constant, DyadicPower };
    Kind kind = Kind::Constant;
    int64_t value = 4;  // h for Constant, C for DyadicPower

    static HSchedule constant(int64_t h);
    static HSchedule dyadic(int64_t c);

    // h_t; h_0 := h_1
    int64_t h(int64_t t) const;
    bool doubles_at(int64_t t) const { return t >= 1 && h(t) != h(t - 1); }
    // first doubling time in (after, limit], or -1
    int64_t next_doubling(int64_t after, int64_t limit) const;
    std::string str() const;
};

HSchedule parse_schedule(const std::string& s);  // "4", "const:4", "dyadic:3"

// ceil(4 q^2 h^2)
int64_t H_of(const Rational& q, int64_t h);
int64_t Htilde_of(const HSchedule& s, const Rational& q, int64_t t);
int64_t htilde_of(const HSchedule& s, int64_t t);

struct SegmentId {
    int64_t width = 1;
    int64_t index = 0;
    int64_t lo() const { return index * width; }
    int64_t hi() const { return index * width + width - 1; }  // inclusive
    bool operator==(const SegmentId&) const = default;
};

inline int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline SegmentId segment_of(int64_t h, int64_t x) { return {h, floor_div(x, h)}; }

// children at width h/2 of a segment of width h (dyadic nesting)
inline std::vector<SegmentId> children_of(SegmentId s) {
    int64_t w = s.width / 2;
    return {{w, 2 * s.index}, {w, 2 * s.index + 1}};
}

struct ScheduleViolation {
    int64_t t;
    int64_t other;
    std::string what;
};

// Checks ratio in {1,2} and the spacing condition between doubling times.
std::vector<ScheduleViolation> validate_schedule(const HSchedule& s, const Rational& q, int64_t horizon);

}  // namespace contain
