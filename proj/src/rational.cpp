#include "rational.hpp"

#include "errors.hpp"

#include <cctype>

namespace superflat {

std::string rat_string(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_parse(const std::string& text) {
    auto bad = [&] { throw InputError("not a rational literal: '" + text + "'"); };
    if (text.empty())
        bad();
    std::size_t digits = 0;
    std::size_t slashes = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            ++digits;
        } else if (c == '/') {
            ++slashes;
            if (slashes > 1 || i == 0 || i + 1 == text.size())
                bad();
        } else if (c == '-' || c == '+') {
            if (i != 0)
                bad();
        } else {
            bad();
        }
    }
    if (digits == 0)
        bad();
    Rat q;
    if (q.set_str(text, 10) != 0)
        bad();
    if (q.get_den() == 0)
        throw InputError("zero denominator in rational literal: '" + text + "'");
    q.canonicalize();
    return q;
}

double rat_to_double(const Rat& q) {
    return q.get_d();
}

} // namespace superflat
