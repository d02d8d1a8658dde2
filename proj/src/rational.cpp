#include "srr/rational.hpp"

#include "srr/errors.hpp"

#include <cmath>
#include <cstdint>

namespace srr {

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw ValidationError("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            Int num(s.substr(0, slash));
            Int den(s.substr(slash + 1));
            if (den == 0) throw ValidationError("zero denominator in '" + s + "'");
            return Rat(num, den);
        }
        auto dot = s.find('.');
        if (dot == std::string::npos) return Rat(Int(s));
        std::string head = s.substr(0, dot);
        std::string tail = s.substr(dot + 1);
        if (tail.find_first_not_of("0123456789") != std::string::npos)
            throw ValidationError("bad decimal literal '" + s + "'");
        bool negative = !head.empty() && head[0] == '-';
        if (head == "-" || head.empty()) head = negative ? "-0" : "0";
        Int scale = 1;
        for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
        Int num = Int(head) * scale;
        Int frac = tail.empty() ? Int(0) : Int(tail);
        num += negative ? -frac : frac;
        return Rat(num, scale);
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("cannot parse rational literal '" + s + "'");
    }
}

std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

Rat rat_from_double(double v) {
    if (!std::isfinite(v)) throw ValidationError("non-finite value is not a rational");
    if (v == 0.0) return Rat(0);
    int exp = 0;
    double mant = std::frexp(v, &exp);  // v = mant * 2^exp, |mant| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    auto mant_int = static_cast<int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    Rat r(mant_int);
    if (exp >= 0) {
        r *= Rat(Int(1) << exp);
    } else {
        r /= Rat(Int(1) << (-exp));
    }
    return r;
}

}  // namespace srr
