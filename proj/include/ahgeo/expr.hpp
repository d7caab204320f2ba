#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ahgeo/errors.hpp"
#include "ahgeo/jet.hpp"

namespace ahgeo {

// Closed-form scalar expression over coordinates x1..x_dim.
//
// Grammar (whitespace insignificant, no implicit multiplication):
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' intlit)*          (chains apply left to right)
//   primary := number | 'pi' | 'e' | var | fn '(' expr ')' | '(' expr ')'
//   intlit  := ['-'] digits | '(' ['-'] digits ')'
// Functions: sin cos tan exp log sqrt sinh cosh atan.
class Expr {
public:
    enum class Fn : std::uint8_t { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh, Atan };

    static Expr parse(std::string_view text, int dim);

    int dim() const { return dim_; }
    const std::string& source() const { return source_; }

    // Evaluate with scalar type T (double or Jet). `vars` holds the value of
    // x1..x_dim; extra entries are ignored. `one` is T's multiplicative
    // identity, needed to seed integer powers for jet arguments.
    template <class T>
    T eval(const std::vector<T>& vars, const T& one) const {
        if (static_cast<int>(vars.size()) < dim_)
            throw EvalError("expression needs " + std::to_string(dim_) +
                            " coordinates, got " + std::to_string(vars.size()));
        std::vector<T> out;
        out.reserve(nodes_.size());
        for (const Node& nd : nodes_) {
            switch (nd.op) {
            case Op::Const:
                out.push_back(one * nd.value);
                break;
            case Op::Var:
                out.push_back(vars[nd.var]);
                break;
            case Op::Add:
                out.push_back(out[nd.a] + out[nd.b]);
                break;
            case Op::Sub:
                out.push_back(out[nd.a] - out[nd.b]);
                break;
            case Op::Mul:
                out.push_back(out[nd.a] * out[nd.b]);
                break;
            case Op::Div:
                if (is_zero(out[nd.b])) throw EvalError(where("division by zero", nd));
                out.push_back(out[nd.a] / out[nd.b]);
                break;
            case Op::Neg:
                out.push_back(-out[nd.a]);
                break;
            case Op::Pow:
                if (nd.expnt < 0 && is_zero(out[nd.a]))
                    throw EvalError(where("division by zero", nd));
                out.push_back(pow_int(out[nd.a], nd.expnt, one));
                break;
            case Op::Call:
                out.push_back(apply(nd, out[nd.a]));
                break;
            }
        }
        return out.back();
    }

    double eval(const std::vector<double>& point) const { return eval(point, 1.0); }

    // Order-K jet of the expression at `point`, derivatives in all dim() (or
    // `jet_dim` >= dim()) coordinates.
    Jet eval_jet(const std::vector<double>& point, int order, int jet_dim = 0) const {
        int n = jet_dim > 0 ? jet_dim : dim_;
        std::vector<Jet> vars;
        vars.reserve(point.size());
        for (std::size_t i = 0; i < point.size(); ++i)
            vars.push_back(Jet::variable(n, order, static_cast<int>(i), point[i]));
        return eval(vars, Jet::constant(n, order, 1.0));
    }

private:
    enum class Op : std::uint8_t { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Call };

    struct Node {
        Op op;
        int a = -1, b = -1;      // operand node indices
        double value = 0.0;      // Const
        int var = 0;             // Var: zero-based coordinate index
        long long expnt = 0;     // Pow
        Fn fn = Fn::Sin;         // Call
        std::uint32_t pos = 0;   // byte offset in source, for error reports
    };

    static bool is_zero(double x) { return x == 0.0; }
    static bool is_zero(const Jet& x) { return x.value() == 0.0; }

    template <class T>
    T apply(const Node& nd, const T& x) const {
        using std::cos;
        using std::cosh;
        using std::exp;
        using std::log;
        using std::sin;
        using std::sinh;
        using std::sqrt;
        using std::tan;
        using std::atan;
        switch (nd.fn) {
        case Fn::Sin: return sin(x);
        case Fn::Cos: return cos(x);
        case Fn::Tan: return tan(x);
        case Fn::Exp: return exp(x);
        case Fn::Log:
            if (value_of(x) <= 0.0) throw DomainError(where("log of non-positive value", nd));
            return log(x);
        case Fn::Sqrt:
            if (value_of(x) < 0.0) throw DomainError(where("sqrt of negative value", nd));
            return sqrt(x);
        case Fn::Sinh: return sinh(x);
        case Fn::Cosh: return cosh(x);
        case Fn::Atan: return atan(x);
        }
        throw EvalError("unreachable");
    }

    static double value_of(double x) { return x; }
    static double value_of(const Jet& x) { return x.value(); }

    std::string where(const std::string& what, const Node& nd) const {
        return what + " in '" + source_ + "' at byte " + std::to_string(nd.pos);
    }

    int add(Node nd) {
        nodes_.push_back(nd);
        return static_cast<int>(nodes_.size()) - 1;
    }

    friend class ExprParser;

    std::vector<Node> nodes_;
    int dim_ = 0;
    std::string source_;
};

class ExprParser {
public:
    ExprParser(std::string_view text, int dim) : text_(text) {
        expr_.dim_ = dim;
        expr_.source_ = std::string(text);
    }

    Expr run() {
        int root = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        (void)root; // nodes are in evaluation order; the last one is the root
        return std::move(expr_);
    }

private:
    using Node = Expr::Node;
    using Op = Expr::Op;

    int parse_sum() {
        int lhs = parse_term();
        for (;;) {
            skip_ws();
            std::size_t at = pos_;
            if (accept('+')) {
                int rhs = parse_term();
                lhs = add_binary(Op::Add, lhs, rhs, at);
            } else if (accept('-')) {
                int rhs = parse_term();
                lhs = add_binary(Op::Sub, lhs, rhs, at);
            } else {
                return lhs;
            }
        }
    }

    int parse_term() {
        int lhs = parse_unary();
        for (;;) {
            skip_ws();
            std::size_t at = pos_;
            if (accept('*')) {
                int rhs = parse_unary();
                lhs = add_binary(Op::Mul, lhs, rhs, at);
            } else if (accept('/')) {
                int rhs = parse_unary();
                lhs = add_binary(Op::Div, lhs, rhs, at);
            } else {
                return lhs;
            }
        }
    }

    int parse_unary() {
        skip_ws();
        std::size_t at = pos_;
        if (accept('-')) {
            int a = parse_unary();
            Node nd;
            nd.op = Op::Neg;
            nd.a = a;
            nd.pos = static_cast<std::uint32_t>(at);
            return expr_.add(nd);
        }
        return parse_power();
    }

    int parse_power() {
        int base = parse_primary();
        for (;;) {
            skip_ws();
            std::size_t at = pos_;
            if (!accept('^')) return base;
            Node nd;
            nd.op = Op::Pow;
            nd.a = base;
            nd.expnt = parse_int_literal();
            nd.pos = static_cast<std::uint32_t>(at);
            base = expr_.add(nd);
        }
    }

    long long parse_int_literal() {
        skip_ws();
        bool paren = accept('(');
        skip_ws();
        bool neg = accept('-');
        skip_ws();
        std::size_t at = pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("integer exponent required after '^'", pos_);
        long long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1000000) throw ParseError("exponent too large", at);
            ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E'))
            throw ParseError("integer exponent required after '^'", pos_);
        if (paren) {
            skip_ws();
            if (!accept(')')) throw ParseError("expected ')' after exponent", pos_);
        }
        return neg ? -v : v;
    }

    int parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        std::size_t at = pos_;
        char c = text_[pos_];
        if (accept('(')) {
            int inner = parse_sum();
            skip_ws();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
        throw ParseError(std::string("unexpected character '") + c + "'", at);
    }

    int parse_number() {
        std::size_t at = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            } else {
                pos_ = save; // 'e' here is not an exponent marker
            }
        }
        std::string tok(text_.substr(at, pos_ - at));
        if (tok == ".") throw ParseError("malformed number", at);
        Node nd;
        nd.op = Op::Const;
        nd.value = std::stod(tok);
        nd.pos = static_cast<std::uint32_t>(at);
        return expr_.add(nd);
    }

    int parse_name() {
        std::size_t at = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(at, pos_ - at));
        if (name == "pi" || name == "e") {
            Node nd;
            nd.op = Op::Const;
            nd.value = name == "pi" ? std::numbers::pi : std::numbers::e;
            nd.pos = static_cast<std::uint32_t>(at);
            return expr_.add(nd);
        }
        if (name.size() >= 2 && name[0] == 'x' &&
            std::all_of(name.begin() + 1, name.end(),
                        [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            int idx = std::stoi(name.substr(1));
            if (idx < 1 || idx > expr_.dim_)
                throw ParseError("unknown symbol '" + name + "' (dimension is " +
                                     std::to_string(expr_.dim_) + ")",
                                 at);
            Node nd;
            nd.op = Op::Var;
            nd.var = idx - 1;
            nd.pos = static_cast<std::uint32_t>(at);
            return expr_.add(nd);
        }
        static const std::pair<const char*, Expr::Fn> fns[] = {
            {"sin", Expr::Fn::Sin},   {"cos", Expr::Fn::Cos},  {"tan", Expr::Fn::Tan},
            {"exp", Expr::Fn::Exp},   {"log", Expr::Fn::Log},  {"sqrt", Expr::Fn::Sqrt},
            {"sinh", Expr::Fn::Sinh}, {"cosh", Expr::Fn::Cosh}, {"atan", Expr::Fn::Atan},
        };
        for (auto [fname, fn] : fns) {
            if (name == fname) {
                skip_ws();
                if (!accept('(')) throw ParseError("expected '(' after '" + name + "'", pos_);
                int arg = parse_sum();
                skip_ws();
                if (!accept(')')) throw ParseError("expected ')'", pos_);
                Node nd;
                nd.op = Op::Call;
                nd.fn = fn;
                nd.a = arg;
                nd.pos = static_cast<std::uint32_t>(at);
                return expr_.add(nd);
            }
        }
        throw ParseError("unknown symbol '" + name + "'", at);
    }

    int add_binary(Op op, int a, int b, std::size_t at) {
        Node nd;
        nd.op = op;
        nd.a = a;
        nd.b = b;
        nd.pos = static_cast<std::uint32_t>(at);
        return expr_.add(nd);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Expr expr_;
};

inline Expr Expr::parse(std::string_view text, int dim) {
    if (dim < 1 || dim > Jet::kMaxDim)
        throw ParseError("dimension out of range", 0);
    return ExprParser(text, dim).run();
}

} // namespace ahgeo
