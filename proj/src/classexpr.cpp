#include "cresym/classexpr.hpp"

#include <cctype>

namespace cresym {

int ClassExpr::max_point() const {
    int mx = 0;
    for (const auto& [g, c] : coeff_center)
        if (c != 0)
            for (int i : subset_elements(g)) mx = std::max(mx, i + 1);
    for (const auto& [i, c] : coeff_extra)
        if (c != 0) mx = std::max(mx, i);
    return mx;
}

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    char take() {
        skip_ws();
        if (pos >= s.size()) throw ParseError("unexpected end of expression");
        return s[pos++];
    }
    bool take_if(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    long integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer at position " + std::to_string(start));
        return std::stol(s.substr(start, pos - start));
    }
};

}  // namespace

ClassExpr parse_class_expr(const std::string& text, int n) {
    ClassExpr out;
    bool side_set = false;
    Cursor cur{text};

    auto set_side = [&](bool divisor) {
        if (side_set && out.divisor_side != divisor)
            throw ParseError("cannot mix divisor and curve tokens");
        out.divisor_side = divisor;
        side_set = true;
    };

    bool first = true;
    while (!cur.done()) {
        mpz_class sign = 1;
        char p = cur.peek();
        if (p == '+' || p == '-') {
            cur.take();
            if (p == '-') sign = -1;
        } else if (!first) {
            throw ParseError("expected '+' or '-' between terms");
        }
        first = false;

        mpz_class coeff = sign;
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            coeff = sign * cur.integer();
            cur.take_if('*');
        }

        char atom = cur.take();
        if (atom == 'H' || atom == 'h') {
            bool divisor = (atom == 'H');
            if (cur.peek() == '{' || std::isdigit(static_cast<unsigned char>(cur.peek())))
                throw ParseError("hyperplane token takes no index");
            set_side(divisor);
            out.coeff_h += coeff;
            continue;
        }
        if (atom != 'E' && atom != 'e')
            throw ParseError(std::string("unexpected token '") + atom + "'");
        bool divisor = (atom == 'E');
        set_side(divisor);

        if (cur.take_if('{')) {
            Subset s = 0;
            for (;;) {
                long v = cur.integer();
                if (v < 0 || v > n) throw ParseError("center element outside {0..n}");
                s |= (1u << v);
                if (cur.take_if(',')) continue;
                if (cur.take_if('}')) break;
                throw ParseError("expected ',' or '}' in center label");
            }
            if (subset_size(s) > n) throw ParseError("center label too large");
            out.coeff_center[s] += coeff;
        } else {
            long i = cur.integer();
            if (i < 1) throw ParseError("points are numbered from 1");
            if (i <= n + 1)
                out.coeff_center[1u << (i - 1)] += coeff;
            else
                out.coeff_extra[static_cast<int>(i)] += coeff;
        }
    }
    if (!side_set) throw ParseError("empty class expression");
    return out;
}

std::string format_curve(const mpz_class& d, const std::vector<mpz_class>& a) {
    std::string out = d.get_str() + "h";
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        mpz_class c = a[i];
        if (c > 0) out += "-";
        else {
            out += "+";
            c = -c;
        }
        if (c != 1) out += c.get_str() + "*";
        out += "e" + std::to_string(i + 1);
    }
    return out;
}

}  // namespace cresym
