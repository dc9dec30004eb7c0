#include "nls/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

namespace nls {

namespace {

struct ParseError : ValidationError {
    using ValidationError::ValidationError;
};

}  // namespace

class ExpressionParser {
public:
    explicit ExpressionParser(const std::string& src) : src_(src) {}

    Expression run() {
        Expression e;
        e.source_ = src_;
        out_ = &e;
        parse_sum();
        skip_ws();
        if (pos_ != src_.size()) {
            fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
        }
        if (e.program_.empty()) {
            fail("empty expression");
        }
        // eval() uses a fixed 64-slot stack
        int depth = 0, peak = 0;
        for (const auto& in : e.program_) {
            switch (in.op) {
                case Op::PushConst: case Op::PushT: case Op::PushX: case Op::PushY:
                    peak = std::max(peak, ++depth);
                    break;
                case Op::Add: case Op::Sub: case Op::Mul: case Op::Div:
                    --depth;
                    break;
                default:
                    break;
            }
        }
        if (peak > 63) fail("expression too deeply nested");
        return e;
    }

private:
    const std::string& src_;
    size_t pos_ = 0;
    Expression* out_ = nullptr;

    using Op = decltype(Expression::Instr::op);

    [[noreturn]] void fail(const std::string& what) {
        throw ParseError("expression '" + src_ + "' at position " + std::to_string(pos_) +
                         ": " + what);
    }

    void emit(Op op, double v = 0.0) { out_->program_.push_back({op, v}); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void parse_sum() {
        parse_product();
        for (;;) {
            if (consume('+')) {
                parse_product();
                emit(Op::Add);
            } else if (consume('-')) {
                parse_product();
                emit(Op::Sub);
            } else {
                return;
            }
        }
    }

    void parse_product() {
        parse_unary();
        for (;;) {
            if (consume('*')) {
                parse_unary();
                emit(Op::Mul);
            } else if (consume('/')) {
                parse_unary();
                emit(Op::Div);
            } else {
                return;
            }
        }
    }

    void parse_unary() {
        if (consume('-')) {
            parse_unary();
            emit(Op::Neg);
        } else if (consume('+')) {
            parse_unary();
        } else {
            parse_primary();
        }
    }

    void parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) {
            fail("expected a value");
        }
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            parse_sum();
            if (!consume(')')) fail("missing ')'");
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src_.c_str() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) fail("bad number");
            pos_ += static_cast<size_t>(end - begin);
            emit(Op::PushConst, v);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   std::isalnum(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
            }
            const std::string name = src_.substr(start, pos_ - start);
            if (name == "t") {
                emit(Op::PushT);
                out_->uses_t_ = true;
            } else if (name == "x") {
                emit(Op::PushX);
                out_->uses_x_ = true;
            } else if (name == "y") {
                emit(Op::PushY);
                out_->uses_y_ = true;
            } else if (name == "pi") {
                emit(Op::PushConst, std::numbers::pi);
            } else if (name == "e") {
                emit(Op::PushConst, std::numbers::e);
            } else if (name == "sin" || name == "cos" || name == "exp") {
                if (!consume('(')) fail("'" + name + "' needs '('");
                parse_sum();
                if (!consume(')')) fail("missing ')' after '" + name + "'");
                emit(name == "sin" ? Op::Sin : name == "cos" ? Op::Cos : Op::Exp);
            } else {
                fail("unknown identifier '" + name + "'");
            }
            return;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }
};

Expression Expression::parse(const std::string& source) {
    return ExpressionParser(source).run();
}

double Expression::eval(double t, double x, double y) const {
    double stack[64];
    int top = -1;
    for (const Instr& in : program_) {
        switch (in.op) {
            case Op::PushConst: stack[++top] = in.value; break;
            case Op::PushT: stack[++top] = t; break;
            case Op::PushX: stack[++top] = x; break;
            case Op::PushY: stack[++top] = y; break;
            case Op::Add: --top; stack[top] += stack[top + 1]; break;
            case Op::Sub: --top; stack[top] -= stack[top + 1]; break;
            case Op::Mul: --top; stack[top] *= stack[top + 1]; break;
            case Op::Div: --top; stack[top] /= stack[top + 1]; break;
            case Op::Neg: stack[top] = -stack[top]; break;
            case Op::Sin: stack[top] = std::sin(stack[top]); break;
            case Op::Cos: stack[top] = std::cos(stack[top]); break;
            case Op::Exp: stack[top] = std::exp(stack[top]); break;
        }
    }
    return stack[0];
}

}  // namespace nls
