#include "qlab/expr.hpp"

#include <cctype>

#include "qlab/qproducts.hpp"
#include "qlab/rr.hpp"

namespace qlab {

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("end of input");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected) { throw ParseError(pos_, expected); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!consume(c)) fail(std::string("'") + c + "'");
    }

    bool starts_atom() {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == '@' || c == 'f' ||
               c == 'q' || c == 'G' || c == 'H' || c == 'T' || c == 'K' || c == 'n';
    }

    unsigned long long integer() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("integer");
        unsigned long long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<unsigned long long>(text_[pos_] - '0');
            if (v > (1ULL << 62)) fail("smaller integer");
            ++pos_;
        }
        return v;
    }

    long long signed_integer() {
        const bool negative = consume('-');
        const unsigned long long v = integer();
        return negative ? -static_cast<long long>(v) : static_cast<long long>(v);
    }

    ExprPtr expr() {
        skip_ws();
        const std::size_t b = pos_;
        ExprPtr e;
        if (consume('-')) {
            ExprPtr t = term();
            e = make({ExprKind::Neg, {}, 0, {}, t, nullptr, b, t->end});
        } else {
            e = term();
        }
        for (;;) {
            skip_ws();
            if (consume('+')) {
                ExprPtr t = term();
                e = make({ExprKind::Add, {}, 0, {}, e, t, b, t->end});
            } else if (consume('-')) {
                ExprPtr t = term();
                e = make({ExprKind::Sub, {}, 0, {}, e, t, b, t->end});
            } else {
                return e;
            }
        }
    }

    ExprPtr term() {
        skip_ws();
        const std::size_t b = pos_;
        ExprPtr e = factor();
        for (;;) {
            skip_ws();
            if (consume('*')) {
                ExprPtr f = factor();
                e = make({ExprKind::Mul, {}, 0, {}, e, f, b, f->end});
            } else if (consume('/')) {
                ExprPtr f = factor();
                e = make({ExprKind::Div, {}, 0, {}, e, f, b, f->end});
            } else if (starts_atom()) {  // juxtaposition
                ExprPtr f = factor();
                e = make({ExprKind::Mul, {}, 0, {}, e, f, b, f->end});
            } else {
                return e;
            }
        }
    }

    ExprPtr factor() {
        skip_ws();
        const std::size_t b = pos_;
        ExprPtr a = atom();
        skip_ws();
        if (consume('^')) {
            const long long e = signed_integer();
            return make({ExprKind::Pow, {}, e, {}, a, nullptr, b, pos_});
        }
        return a;
    }

    // G / H / T followed by '(q)' or '(q^k)'
    ExprPtr dilated_function(ExprKind kind, std::size_t b) {
        expect('(');
        skip_ws();
        expect('q');
        long long d = 1;
        skip_ws();
        if (consume('^')) d = static_cast<long long>(integer());
        if (d < 1) fail("dilation >= 1");
        skip_ws();
        expect(')');
        return make({kind, {}, d, {}, nullptr, nullptr, b, pos_});
    }

    ExprPtr atom() {
        skip_ws();
        const std::size_t b = pos_;
        const char c = peek();

        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            skip_ws();
            expect(')');
            return e;
        }
        if (c == 'f') {
            ++pos_;
            const unsigned long long k = integer();
            if (k == 0) fail("f-index >= 1");
            return make({ExprKind::EtaF, {}, static_cast<long long>(k), {}, nullptr, nullptr, b,
                         pos_});
        }
        if (c == 'q') {
            ++pos_;
            long long k = 1;
            if (consume('^')) k = static_cast<long long>(integer());
            return make({ExprKind::Monomial, {}, k, {}, nullptr, nullptr, b, pos_});
        }
        if (c == 'G') {
            ++pos_;
            return dilated_function(ExprKind::GFun, b);
        }
        if (c == 'H') {
            ++pos_;
            return dilated_function(ExprKind::HFun, b);
        }
        if (c == 'T') {
            ++pos_;
            return dilated_function(ExprKind::TFun, b);
        }
        if (c == 'K') {
            ++pos_;
            return make({ExprKind::KConst, {}, 0, {}, nullptr, nullptr, b, pos_});
        }
        if (c == 'n') {
            if (text_.substr(pos_).starts_with("negq4(")) {
                pos_ += 6;
                ExprPtr e = expr();
                skip_ws();
                expect(')');
                return make({ExprKind::SubstNegQ4, {}, 0, {}, e, nullptr, b, pos_});
            }
            fail("'negq4('");
        }
        if (c == '@') {
            ++pos_;
            std::string name;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                name += text_[pos_++];
            }
            if (name.empty()) fail("series name after '@'");
            return make({ExprKind::NamedSeries, {}, 0, std::move(name), nullptr, nullptr, b, pos_});
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const unsigned long long num = integer();
            // "p/q" with both bare integers is a rational constant; otherwise
            // the '/' is series division handled at term level.
            if (peek() == '/' && pos_ + 1 < text_.size() &&
                std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                ++pos_;
                const unsigned long long den = integer();
                if (den == 0) fail("nonzero denominator");
                return make({ExprKind::RationalConst, Rational(num) / Rational(den), 0, {},
                             nullptr, nullptr, b, pos_});
            }
            return make({ExprKind::RationalConst, Rational(num), 0, {}, nullptr, nullptr, b, pos_});
        }
        fail("atom: f<k>, q, G(q), H(q), T(q), K, negq4(...), @name, number, or '('");
    }
};

// precedence: add/sub 1, mul/div 2, pow 3, atoms 4
int precedence(ExprKind k) {
    switch (k) {
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Neg:
            return 1;
        case ExprKind::Mul:
        case ExprKind::Div:
            return 2;
        case ExprKind::Pow:
            return 3;
        default:
            return 4;
    }
}

void print_node(const ExprPtr& e, int min_prec, std::string& out) {
    const int prec = precedence(e->kind);
    const bool parens = prec < min_prec;
    if (parens) out += '(';
    switch (e->kind) {
        case ExprKind::RationalConst:
            out += to_string(e->value);
            break;
        case ExprKind::Monomial:
            out += e->arg == 1 ? "q" : "q^" + std::to_string(e->arg);
            break;
        case ExprKind::EtaF:
            out += "f" + std::to_string(e->arg);
            break;
        case ExprKind::GFun:
        case ExprKind::HFun:
        case ExprKind::TFun: {
            out += e->kind == ExprKind::GFun ? 'G' : e->kind == ExprKind::HFun ? 'H' : 'T';
            out += e->arg == 1 ? "(q)" : "(q^" + std::to_string(e->arg) + ")";
            break;
        }
        case ExprKind::KConst:
            out += 'K';
            break;
        case ExprKind::Neg:
            out += '-';
            print_node(e->lhs, 2, out);
            break;
        case ExprKind::Add:
            print_node(e->lhs, 1, out);
            out += " + ";
            print_node(e->rhs, 2, out);
            break;
        case ExprKind::Sub:
            print_node(e->lhs, 1, out);
            out += " - ";
            print_node(e->rhs, 2, out);
            break;
        case ExprKind::Mul:
            print_node(e->lhs, 2, out);
            out += "*";
            print_node(e->rhs, 3, out);
            break;
        case ExprKind::Div:
            print_node(e->lhs, 2, out);
            out += "/";
            print_node(e->rhs, 3, out);
            break;
        case ExprKind::Pow:
            print_node(e->lhs, 4, out);
            out += "^" + std::to_string(e->arg);
            break;
        case ExprKind::SubstNegQ4:
            out += "negq4(";
            print_node(e->lhs, 0, out);
            out += ')';
            break;
        case ExprKind::NamedSeries:
            out += "@" + e->name;
            break;
    }
    if (parens) out += ')';
}

Series eval_dilated(const ExprPtr& e, std::size_t n, const Ring& ring,
                    const std::function<Series(std::size_t, const Ring&)>& base) {
    const std::size_t d = static_cast<std::size_t>(e->arg);
    if (d == 1) return base(n, ring);
    const std::size_t inner = (n + d - 1) / d;
    return truncate(dilate(base(inner, ring), d), n);
}

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string print_expr(const ExprPtr& e) {
    std::string out;
    print_node(e, 0, out);
    return out;
}

Series eval(const ExprPtr& e, std::size_t n, const Ring& ring, const EvalEnv& env) {
    switch (e->kind) {
        case ExprKind::RationalConst:
            return Series::monomial(ring, e->value, 0, n);
        case ExprKind::Monomial:
            return Series::monomial(ring, Rational(1), static_cast<std::size_t>(e->arg), n);
        case ExprKind::EtaF:
            return euler_f(static_cast<std::size_t>(e->arg), n, ring);
        case ExprKind::GFun:
            return eval_dilated(e, n, ring, [](std::size_t m, const Ring& r) {
                return rr_G(m, RRSide::Product, r);
            });
        case ExprKind::HFun:
            return eval_dilated(e, n, ring, [](std::size_t m, const Ring& r) {
                return rr_H(m, RRSide::Product, r);
            });
        case ExprKind::TFun:
            return t_series(static_cast<std::size_t>(e->arg), n, ring);
        case ExprKind::KConst:
            return k_series(n, ring);
        case ExprKind::Neg:
            return neg(eval(e->lhs, n, ring, env));
        case ExprKind::Add:
            return add(eval(e->lhs, n, ring, env), eval(e->rhs, n, ring, env));
        case ExprKind::Sub:
            return sub(eval(e->lhs, n, ring, env), eval(e->rhs, n, ring, env));
        case ExprKind::Mul:
            return mul(eval(e->lhs, n, ring, env), eval(e->rhs, n, ring, env));
        case ExprKind::Div: {
            const Series a = eval(e->lhs, n, ring, env);
            const Series b = eval(e->rhs, n, ring, env);
            try {
                return mul(a, invert(b));
            } catch (const NonUnitLeadingError& err) {
                throw NonUnitLeadingError(err.what(), e->rhs->begin, e->rhs->end);
            }
        }
        case ExprKind::Pow: {
            const Series a = eval(e->lhs, n, ring, env);
            try {
                return pow(a, e->arg);
            } catch (const NonUnitLeadingError& err) {
                throw NonUnitLeadingError(err.what(), e->lhs->begin, e->lhs->end);
            }
        }
        case ExprKind::SubstNegQ4: {
            const std::size_t inner = (n + 3) / 4;
            return truncate(dilate(alternate_signs(eval(e->lhs, inner, ring, env)), 4), n);
        }
        case ExprKind::NamedSeries: {
            if (!env.named) throw Error("no resolver for named series '@" + e->name + "'");
            return env.named(e->name, n, ring);
        }
    }
    throw Error("unreachable expression kind");
}

}  // namespace qlab
