#include "bdk/parse.hpp"

#include <cctype>
#include <charconv>

namespace bdk {

namespace {

std::string strip(const std::string& s) {
    std::string r;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) r += c;
    return r;
}

std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

Series2D mul(const Series2D& a, const Series2D& b) {
    const Caps ca = a.caps(), cb = b.caps();
    return multiply(a, b, {ca.z + cb.z, ca.w + cb.w});
}

class Parser {
public:
    explicit Parser(std::string s) : s_(std::move(s)) {}

    Series2D run() {
        if (s_.empty()) fail("empty expression");
        Series2D r = expr();
        if (pos_ != s_.size()) fail("unexpected character");
        return r.trimmed().degree().z < 0 ? Series2D() : r.trimmed();
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("parse error at position " + std::to_string(pos_) + " in '" + s_ + "': " + what);
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    bool starts_factor() const {
        const char c = peek();
        return c == 'z' || c == 'w' || c == 'i' || c == '(' || c == '.' || std::isdigit(static_cast<unsigned char>(c));
    }

    Series2D expr() {
        Series2D r = term();
        while (peek() == '+' || peek() == '-') {
            const char op = s_[pos_++];
            Series2D t = term();
            r = op == '+' ? r + t : r - t;
        }
        return r;
    }

    Series2D term() {
        Series2D r = unary();
        while (true) {
            if (peek() == '*') {
                ++pos_;
                r = mul(r, unary());
            } else if (starts_factor()) {
                r = mul(r, power());
            } else {
                return r;
            }
        }
    }

    Series2D unary() {
        if (peek() == '-') {
            ++pos_;
            return cplx(-1.0) * unary();
        }
        if (peek() == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    Series2D power() {
        Series2D base = primary();
        if (peek() != '^') return base;
        ++pos_;
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_ || peek() == '.') fail("exponent must be a nonnegative integer");
        int e = 0;
        std::from_chars(s_.data() + start, s_.data() + pos_, e);
        if (e > 10000) fail("exponent too large");
        Series2D r = Series2D::constant(1.0);
        for (int k = 0; k < e; ++k) r = mul(r, base);
        return r;
    }

    Series2D primary() {
        const char c = peek();
        if (c == 'z') {
            ++pos_;
            return Series2D::monomial(1, 0);
        }
        if (c == 'w') {
            ++pos_;
            return Series2D::monomial(0, 1);
        }
        if (c == 'i') {
            ++pos_;
            return Series2D::constant(cplx(0.0, 1.0));
        }
        if (c == '(') {
            ++pos_;
            Series2D r = expr();
            if (peek() != ')') fail("missing ')'");
            ++pos_;
            return r;
        }
        if (c == '.' || std::isdigit(static_cast<unsigned char>(c))) return number();
        fail(c == '\0' ? "unexpected end of input" : std::string("unexpected '") + c + "'");
    }

    Series2D number() {
        double v = 0.0;
        const auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc()) fail("bad number");
        pos_ = std::size_t(end - s_.data());
        if (peek() == 'i') {
            ++pos_;
            return Series2D::constant(cplx(0.0, v));
        }
        return Series2D::constant(v);
    }

    std::string s_;
    std::size_t pos_ = 0;
};

} // namespace

Series2D parse_polynomial(const std::string& text) { return Parser(strip(text)).run(); }

std::vector<Series2D> parse_generators(const std::string& text) {
    const std::string s = strip(text);
    if (s.empty()) throw ParseError("empty generator list");
    std::vector<Series2D> out;
    for (const auto& part : split_top(s, ',')) out.push_back(Parser(part).run());
    return out;
}

cplx parse_complex(const std::string& text) {
    const Series2D f = parse_polynomial(text);
    const Caps d = f.degree();
    if (d.z > 0 || d.w > 0) throw ParseError("expected a constant, got '" + text + "'");
    return f.coeff(0, 0);
}

BiPoint parse_point(const std::string& text) {
    const auto parts = split_top(strip(text), ',');
    if (parts.size() != 2) throw ParseError("a point needs two coordinates: '" + text + "'");
    return {parse_complex(parts[0]), parse_complex(parts[1])};
}

BlaschkeProduct parse_blaschke(const std::string& text) {
    const std::string s = strip(text);
    if (s == "z" || s == "w") return BlaschkeProduct::identity();
    if ((s.rfind("z^", 0) == 0 || s.rfind("w^", 0) == 0) && s.size() > 2) {
        int d = 0;
        const auto [end, ec] = std::from_chars(s.data() + 2, s.data() + s.size(), d);
        if (ec != std::errc() || end != s.data() + s.size() || d < 1) throw ParseError("bad power '" + text + "'");
        return BlaschkeProduct::power(d);
    }
    std::vector<cplx> zeros;
    cplx gamma = 1.0;
    bool have_zeros = false;
    for (const auto& field : split_top(s, ';')) {
        if (field.empty()) continue;
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value in '" + text + "'");
        const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "zeros") {
            have_zeros = true;
            for (const auto& z : split_top(val, ',')) zeros.push_back(parse_complex(z));
        } else if (key == "gamma") {
            gamma = parse_complex(val);
        } else {
            throw ParseError("unknown Blaschke field '" + key + "'");
        }
    }
    if (!have_zeros) throw ParseError("Blaschke spec needs zeros=...");
    return BlaschkeProduct(std::move(zeros), gamma);
}

} // namespace bdk
