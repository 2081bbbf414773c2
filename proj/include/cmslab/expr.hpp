#pragma once

#include "cmslab/jet.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cmslab {

struct ParseError : Error {
    ParseError(const std::string& msg, size_t offset)
        : Error(msg + " (at offset " + std::to_string(offset) + ")"), offset(offset) {}
    size_t offset;
};

struct EvalError : Error {
    EvalError(const std::string& msg, size_t offset)
        : Error(msg + " (at offset " + std::to_string(offset) + ")"), offset(offset) {}
    size_t offset;
};

using Params = std::map<std::string, double>;

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

/// Immutable parsed scalar expression in chart variables u, v, t plus named
/// parameters. Grammar: + - * / ^ (right-assoc), unary minus, parentheses,
/// and the functions sin cos tan exp log sqrt sinh cosh. '^' binds tighter
/// than unary minus; no implicit multiplication. Angles are radians.
class Expr {
public:
    Expr() = default;

    static Expr parse(std::string_view text);

    bool empty() const { return !root_; }

    /// Canonical text form; parsing it again yields a structurally equal tree.
    std::string print() const;

    double eval(double u, double v, double t, const Params& params = {}) const;
    Jet eval_jet(double u, double v, double t, int order, const Params& params = {}) const;

    /// Like eval_jet, but names in `bindings` resolve to full jets before the
    /// scalar parameters are consulted. Lets an expression reference derived
    /// fields (e.g. embedding coordinates) alongside the chart variables.
    Jet eval_jet(double u, double v, double t, int order, const Params& params,
                 const std::map<std::string, Jet>& bindings) const;

    /// Names referenced that are not chart variables.
    std::set<std::string> param_names() const;

    friend bool structurally_equal(const Expr& a, const Expr& b);

private:
    explicit Expr(ExprPtr root) : root_(std::move(root)) {}
    ExprPtr root_;
};

} // namespace cmslab
