#include "contain/segments.hpp"

#include "contain/lattice.hpp"

namespace contain {

HSchedule HSchedule::constant(int64_t h) {
    if (h < 1) throw GameError("InvalidConfig", "segment width must be positive");
    return {Kind::Constant, h};
}

HSchedule HSchedule::dyadic(int64_t c) {
    if (c < 1 || c > 4096) throw GameError("InvalidConfig", "dyadic schedule constant must lie in [1, 4096]");
    return {Kind::DyadicPower, c};
}

// 2^floor(log2(C t^(1/7))): largest j with 2^(7j) <= C^7 t
int64_t HSchedule::h(int64_t t) const {
    if (kind == Kind::Constant) return value;
    if (t < 1) t = 1;
    __int128 c7 = 1;
    for (int i = 0; i < 7; ++i) c7 *= value;
    __int128 rhs = c7 * t;
    int j = 0;
    while (j < 17) {
        __int128 p = static_cast<__int128>(1) << (7 * (j + 1));
        if (p > rhs) break;
        ++j;
    }
    return int64_t(1) << j;
}

int64_t HSchedule::next_doubling(int64_t after, int64_t limit) const {
    if (kind == Kind::Constant) return -1;
    // h is monotone; binary search the first t with h(t) > h(after)
    int64_t base = h(after);
    if (h(limit) == base) return -1;
    int64_t lo = after, hi = limit;
    while (hi - lo > 1) {
        int64_t mid = lo + (hi - lo) / 2;
        (h(mid) == base ? lo : hi) = mid;
    }
    return hi;
}

std::string HSchedule::str() const {
    return kind == Kind::Constant ? "const:" + std::to_string(value) : "dyadic:" + std::to_string(value);
}

HSchedule parse_schedule(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) return HSchedule::constant(std::stoll(s));
    std::string k = s.substr(0, colon);
    int64_t v = std::stoll(s.substr(colon + 1));
    if (k == "const" || k == "constant") return HSchedule::constant(v);
    if (k == "dyadic") return HSchedule::dyadic(v);
    throw GameError("InvalidConfig", "unknown schedule: " + s);
}

int64_t H_of(const Rational& q, int64_t h) {
    // ceil(4 q^2 h^2) = ceil(4 num^2 h^2 / den^2)
    __int128 n = static_cast<__int128>(4) * q.num * q.num * h * h;
    __int128 d = static_cast<__int128>(q.den) * q.den;
    return static_cast<int64_t>((n + d - 1) / d);
}

int64_t Htilde_of(const HSchedule& s, const Rational& q, int64_t t) {
    int64_t h = s.h(t);
    int64_t H = H_of(q, h);
    return s.h(t + H) != h ? H + h : H;
}

int64_t htilde_of(const HSchedule& s, int64_t t) {
    int64_t h = s.h(t);
    return s.h(t + h) != h ? 2 * h : h;
}

std::vector<ScheduleViolation> validate_schedule(const HSchedule& s, const Rational& q, int64_t horizon) {
    std::vector<ScheduleViolation> out;
    if (s.kind == HSchedule::Kind::Constant) return out;
    std::vector<int64_t> n2;
    int64_t t = 0;
    // scan a little past the horizon so late doublings see their successors
    int64_t limit = horizon + 2 * H_of(q, s.h(horizon)) * 4;
    while ((t = s.next_doubling(t, limit)) != -1) {
        if (s.h(t) != 2 * s.h(t - 1))
            out.push_back({t, t - 1, "ratio h_t/h_{t-1} not in {1,2}"});
        n2.push_back(t);
    }
    for (size_t i = 0; i < n2.size(); ++i) {
        if (n2[i] > horizon) break;
        int64_t w = 2 * H_of(q, s.h(n2[i]));
        for (size_t j = 0; j < n2.size(); ++j) {
            if (i == j) continue;
            if (n2[j] >= n2[i] - w && n2[j] <= n2[i] + w)
                out.push_back({n2[i], n2[j], "doubling times closer than 2H_t"});
        }
    }
    return out;
}

}  // namespace contain
