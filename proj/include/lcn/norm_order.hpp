#pragma once

#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "lcn/errors.hpp"

namespace lcn {

// Order of an L^p norm: a finite p >= 1 or infinity. The infinite order is a
// distinguished state, never a large float, and all exponent arithmetic goes
// through reciprocal(), which returns exactly 0.0 for it.
class NormOrder {
public:
    static NormOrder finite(double p) {
        if (!std::isfinite(p) || p < 1.0)
            throw DomainError("norm order must satisfy 1 <= p < infinity, got " +
                              std::to_string(p));
        return NormOrder(p, false);
    }

    static NormOrder infinity() { return NormOrder(0.0, true); }

    // Accepts the literal token "inf" or a finite number >= 1.
    static NormOrder parse(const std::string& token) {
        if (token == "inf" || token == "Inf" || token == "INF") return infinity();
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            throw UsageError("cannot parse norm order '" + token + "' (expected a number or 'inf')");
        return finite(v);
    }

    bool is_infinite() const { return infinite_; }
    bool is_one() const { return !infinite_ && value_ == 1.0; }

    double value() const {
        if (infinite_) throw UsageError("finite value requested from the infinite norm order");
        return value_;
    }

    // 1/p, exactly 0 at p = infinity.
    double reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }

    // As a double for display and record fields only.
    double display_value() const {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_;
    }

    std::string str() const {
        if (infinite_) return "inf";
        char buf[32];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value_);
        (void)ec;
        return std::string(buf, ptr);
    }

    friend bool operator==(const NormOrder& a, const NormOrder& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend bool operator!=(const NormOrder& a, const NormOrder& b) { return !(a == b); }
    // p <= q in the extended sense (everything <= infinity).
    friend bool operator<=(const NormOrder& a, const NormOrder& b) {
        if (b.infinite_) return true;
        if (a.infinite_) return false;
        return a.value_ <= b.value_;
    }

private:
    NormOrder(double v, bool inf) : value_(v), infinite_(inf) {}
    double value_;
    bool infinite_;
};

}  // namespace lcn
