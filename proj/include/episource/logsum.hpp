#ifndef EPISOURCE_LOGSUM_HPP
#define EPISOURCE_LOGSUM_HPP

#include <cmath>
#include <limits>

namespace episource {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b) {
    if (a == kLogZero) return b;
    if (b == kLogZero) return a;
    const double m = a > b ? a : b;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// log(k!)
inline double log_factorial(double k) { return std::lgamma(k + 1.0); }

// Natural log of a positive count; -inf encodes an exact zero.
struct LogCount {
    double log_value = kLogZero;

    static LogCount zero() { return {kLogZero}; }
    static LogCount one() { return {0.0}; }
    static LogCount from_count(double c) {
        return c <= 0.0 ? zero() : LogCount{std::log(c)};
    }

    double value() const { return std::exp(log_value); }

    bool approx_equal(const LogCount& other, double rel_tol = 1e-9) const {
        if (log_value == kLogZero || other.log_value == kLogZero)
            return log_value == other.log_value;
        const double scale =
            std::max({1.0, std::fabs(log_value), std::fabs(other.log_value)});
        return std::fabs(log_value - other.log_value) <= rel_tol * scale;
    }
};

}  // namespace episource

#endif
