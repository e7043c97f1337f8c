#include "contain/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <cmath>
#include <climits>
#include <numeric>

#include "contain/lattice.hpp"

namespace contain {

using boost::multiprecision::cpp_int;

Rational::Rational(int64_t n, int64_t d) {
    if (d == 0) throw GameError("InvalidConfig", "rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

static int64_t floor_div(__int128 a, __int128 b) {
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return static_cast<int64_t>(q);
}

int64_t Rational::floor_times(int64_t t) const {
    return floor_div(static_cast<__int128>(num) * t, den);
}

int64_t Rational::ceil_times(int64_t t) const {
    return -floor_div(-static_cast<__int128>(num) * t, den);
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
}

std::string Rational::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational parse_rational(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw GameError("InvalidConfig", "empty rational");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational a = parse_rational(s.substr(0, slash));
        Rational b = parse_rational(s.substr(slash + 1));
        if (b.num == 0) throw GameError("InvalidConfig", "rational with zero denominator");
        return Rational(a.num * b.den, a.den * b.num);
    }
    bool neg = false;
    size_t i = 0;
    if (s[0] == '-' || s[0] == '+') { neg = s[0] == '-'; i = 1; }
    int64_t n = 0, d = 1;
    bool dot = false, digits = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.' && !dot) { dot = true; continue; }
        if (!std::isdigit(static_cast<unsigned char>(c))) throw GameError("InvalidConfig", "bad rational: " + raw);
        digits = true;
        n = checked_add(checked_mul(n, 10), c - '0');
        if (dot) d = checked_mul(d, 10);
    }
    if (!digits) throw GameError("InvalidConfig", "bad rational: " + raw);
    return Rational(neg ? -n : n, d);
}

SpreadSpec SpreadSpec::constant(int64_t k) {
    SpreadSpec s;
    s.kind = Kind::Constant;
    s.k = k;
    return s;
}

SpreadSpec SpreadSpec::power(Rational c, Rational e) {
    if (c.num < 0) throw GameError("InvalidConfig", "negative spread coefficient");
    if (e.num < 0) throw GameError("InvalidConfig", "negative spread exponent");
    SpreadSpec s;
    s.kind = Kind::PowerLaw;
    s.coef = c;
    s.exponent = e;
    return s;
}

SpreadSpec SpreadSpec::unbounded() { return SpreadSpec{}; }

// Largest k >= 0 with (k * Cd)^b <= Cn^b * t^a, i.e. k <= C * t^(a/b).
int64_t SpreadSpec::budget(int64_t t) const {
    if (kind == Kind::Unbounded) return INT64_MAX;
    if (kind == Kind::Constant) return k;
    if (t <= 0 || coef.num == 0) return 0;
    const int64_t a = exponent.num, b = exponent.den;
    cpp_int rhs = boost::multiprecision::pow(cpp_int(coef.num), static_cast<unsigned>(b)) *
                  boost::multiprecision::pow(cpp_int(t), static_cast<unsigned>(a));
    auto ok = [&](int64_t cand) {
        cpp_int lhs = boost::multiprecision::pow(cpp_int(cand) * coef.den, static_cast<unsigned>(b));
        return lhs <= rhs;
    };
    double est = coef.to_double() * std::pow(static_cast<double>(t), exponent.to_double());
    int64_t lo = 0, hi;
    if (est > 4e18) throw GameError("Overflow", "spreader budget overflows");
    hi = static_cast<int64_t>(est) + 2;
    lo = std::max<int64_t>(0, static_cast<int64_t>(est) - 2);
    if (!ok(lo)) lo = 0;
    while (ok(hi)) hi *= 2;  // estimate was low
    while (hi - lo > 1) {
        int64_t mid = lo + (hi - lo) / 2;
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

std::string SpreadSpec::str() const {
    switch (kind) {
        case Kind::Unbounded: return "inf";
        case Kind::Constant: return std::to_string(k);
        case Kind::PowerLaw: return coef.str() + "*t^(" + exponent.str() + ")";
    }
    return "?";
}

SpreadSpec parse_spread(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "inf" || s == "unbounded") return SpreadSpec::unbounded();
    auto tpos = s.find('t');
    if (tpos == std::string::npos) {
        Rational r = parse_rational(s);
        if (r.den != 1 || r.num < 0) throw GameError("InvalidConfig", "constant spread must be a non-negative integer");
        return SpreadSpec::constant(r.num);
    }
    Rational c(1);
    std::string rest = s;
    auto star = s.find('*');
    if (star != std::string::npos) {
        c = parse_rational(s.substr(0, star));
        rest = s.substr(star + 1);
    }
    if (rest == "sqrt(t)") return SpreadSpec::power(c, Rational(1, 2));
    if (rest == "t") return SpreadSpec::power(c, Rational(1));
    if (rest.rfind("t^", 0) == 0) {
        std::string e = rest.substr(2);
        if (!e.empty() && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
        return SpreadSpec::power(c, parse_rational(e));
    }
    throw GameError("InvalidConfig", "cannot parse spread expression: " + raw);
}

int64_t container_budget(const Rational& q, int64_t t, bool accumulating, int64_t spent) {
    if (t < 1) throw GameError("InvalidConfig", "container budget requested for t < 1");
    if (accumulating) return q.floor_times(t) - spent;
    return q.floor_times(t) - q.floor_times(t - 1);
}

}  // namespace contain
