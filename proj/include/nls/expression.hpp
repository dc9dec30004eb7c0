#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nls/errors.hpp"

namespace nls {

/// Minimal arithmetic expression over the variables t, x, y.
/// Grammar: + - * /, unary minus, parentheses, sin/cos/exp, constants pi and e,
/// decimal literals. Parsed once into a flat postfix program.
class Expression {
public:
    static Expression parse(const std::string& source);

    double eval(double t, double x, double y = 0.0) const;

    bool uses_t() const { return uses_t_; }
    bool uses_space() const { return uses_x_ || uses_y_; }
    bool uses_y() const { return uses_y_; }

    const std::string& source() const { return source_; }

private:
    enum class Op : std::uint8_t {
        PushConst, PushT, PushX, PushY, Add, Sub, Mul, Div, Neg, Sin, Cos, Exp,
    };
    struct Instr {
        Op op;
        double value = 0.0;
    };

    std::string source_;
    std::vector<Instr> program_;
    bool uses_t_ = false;
    bool uses_x_ = false;
    bool uses_y_ = false;

    friend class ExpressionParser;
};

}  // namespace nls
