#include "mev/util/rational.hpp"

#include <cctype>

namespace mev {

std::string rat_to_string(const Rat& r)
{
    if (rat_is_int(r)) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string rat_to_human(const Rat& r)
{
    if (rat_is_int(r)) return numerator(r).str();
    BigInt den = denominator(r);
    int pow2 = 0, pow5 = 0;
    while (den % 2 == 0) { den /= 2; ++pow2; }
    while (den % 5 == 0) { den /= 5; ++pow5; }
    int digits = pow2 > pow5 ? pow2 : pow5;
    if (den != 1 || digits > 18) return rat_to_string(r);
    // scale to an integer over 10^digits
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    BigInt num = numerator(r) * scale / denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;
    std::string s = num.str();
    if ((int)s.size() <= digits) s.insert(0, std::string(digits + 1 - s.size(), '0'));
    s.insert(s.size() - digits, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return (neg ? "-" : "") + s;
}

Rat rat_from_string(const std::string& s)
{
    if (s.empty()) throw error("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw error("zero denominator in rational literal: " + s);
        return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(BigInt(s));
    std::string head = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    for (char c : frac)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw error("bad rational literal: " + s);
    bool neg = !head.empty() && head[0] == '-';
    BigInt ip = head.empty() || head == "-" ? BigInt(0) : BigInt(neg ? head.substr(1) : head);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt num = ip * scale + (frac.empty() ? BigInt(0) : BigInt(frac));
    if (neg) num = -num;
    return Rat(num, scale);
}

} // namespace mev
