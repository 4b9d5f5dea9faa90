#include "permcert/rational.hpp"

#include <cctype>
#include <ostream>

namespace permcert {

namespace {

bool is_integer_token(std::string_view s) {
    if (!s.empty() && s[0] == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

}  // namespace

Rat Rat::parse(std::string_view text) {
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (!is_integer_token(num))
        throw std::invalid_argument("Rat::parse: bad rational '" +
                                    std::string(text) + "'");
    if (slash == std::string_view::npos) return Rat(Int(std::string(num)));

    std::string_view den = text.substr(slash + 1);
    if (!is_integer_token(den) || den[0] == '+' || den[0] == '-' ||
        den.find('/') != std::string_view::npos)
        throw std::invalid_argument("Rat::parse: bad rational '" +
                                    std::string(text) + "'");
    Int d{std::string(den)};
    if (sgn(d) == 0)
        throw std::invalid_argument("Rat::parse: zero denominator in '" +
                                    std::string(text) + "'");
    return Rat(Int(std::string(num)), d);
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
}

}  // namespace permcert
