#include "lucaspow/realexpr.hpp"

#include <utility>
#include <variant>

namespace lucaspow {

namespace {
enum class Op { Add, Sub, Mul, Div, Neg, Abs, Ln, Exp, Sqrt, PowInt };
}

struct RealExpr::Node {
    struct IntLeaf { mpz_class v; };
    struct RatLeaf { mpq_class v; };
    struct ConstLeaf { Constant c; };
    struct LogIntLeaf { mpz_class k; };
    struct Unary { Op op; std::shared_ptr<const Node> x; long k = 0; };
    struct Binary { Op op; std::shared_ptr<const Node> x, y; };
    std::variant<IntLeaf, RatLeaf, ConstLeaf, LogIntLeaf, Unary, Binary> data;
};

RealExpr::RealExpr() : node_(std::make_shared<Node>(Node{Node::IntLeaf{mpz_class(0)}})) {}

RealExpr::RealExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

RealExpr RealExpr::integer(mpz_class v) {
    return RealExpr(std::make_shared<Node>(Node{Node::IntLeaf{std::move(v)}}));
}

RealExpr RealExpr::integer(long v) { return integer(mpz_class(v)); }

RealExpr RealExpr::rational(mpq_class v) {
    v.canonicalize();
    return RealExpr(std::make_shared<Node>(Node{Node::RatLeaf{std::move(v)}}));
}

RealExpr RealExpr::constant(Constant c) {
    return RealExpr(std::make_shared<Node>(Node{Node::ConstLeaf{c}}));
}

RealExpr RealExpr::log_integer(mpz_class k) {
    if (k < 2) throw domain_error("RealExpr::log_integer: argument must be >= 2");
    return RealExpr(std::make_shared<Node>(Node{Node::LogIntLeaf{std::move(k)}}));
}

struct ExprFactory {
    static RealExpr binary(Op op, const RealExpr& x, const RealExpr& y);
    static RealExpr unary(Op op, RealExpr x, long k);
};

PrecReal RealExpr::eval(mpfr_prec_t prec) const {
    const Node& n = *node_;
    if (auto* i = std::get_if<Node::IntLeaf>(&n.data))
        return PrecReal::from_integer(i->v, prec);
    if (auto* r = std::get_if<Node::RatLeaf>(&n.data))
        return PrecReal::from_rational(r->v, prec);
    if (auto* c = std::get_if<Node::ConstLeaf>(&n.data))
        return const_eval(c->c, prec);
    if (auto* l = std::get_if<Node::LogIntLeaf>(&n.data))
        return log_of_integer(l->k, prec);
    if (auto* u = std::get_if<Node::Unary>(&n.data)) {
        PrecReal x = RealExpr(u->x).eval(prec);
        switch (u->op) {
            case Op::Neg: return neg(x);
            case Op::Abs: return lucaspow::abs(x);
            case Op::Ln: return lucaspow::ln(x);
            case Op::Exp: return lucaspow::exp(x);
            case Op::Sqrt: return lucaspow::sqrt(x);
            case Op::PowInt: return lucaspow::pow_int(x, u->k);
            default: break;
        }
        throw domain_error("RealExpr: bad unary op");
    }
    const auto& b = std::get<Node::Binary>(n.data);
    PrecReal x = RealExpr(b.x).eval(prec);
    PrecReal y = RealExpr(b.y).eval(prec);
    switch (b.op) {
        case Op::Add: return add(x, y);
        case Op::Sub: return lucaspow::sub(x, y);
        case Op::Mul: return lucaspow::mul(x, y);
        case Op::Div: return lucaspow::div(x, y);
        default: break;
    }
    throw domain_error("RealExpr: bad binary op");
}

std::string RealExpr::describe() const {
    const Node& n = *node_;
    if (auto* i = std::get_if<Node::IntLeaf>(&n.data)) return i->v.get_str();
    if (auto* r = std::get_if<Node::RatLeaf>(&n.data)) return r->v.get_str();
    if (auto* c = std::get_if<Node::ConstLeaf>(&n.data)) {
        switch (c->c) {
            case Constant::Alpha: return "alpha";
            case Constant::Beta: return "beta";
            case Constant::Sqrt5: return "sqrt(5)";
            case Constant::LogAlpha: return "log(alpha)";
            case Constant::Log2: return "log(2)";
            case Constant::Golden: return "golden";
        }
    }
    if (auto* l = std::get_if<Node::LogIntLeaf>(&n.data)) return "log(" + l->k.get_str() + ")";
    if (auto* u = std::get_if<Node::Unary>(&n.data)) {
        std::string inner = RealExpr(u->x).describe();
        switch (u->op) {
            case Op::Neg: return "-(" + inner + ")";
            case Op::Abs: return "|" + inner + "|";
            case Op::Ln: return "log(" + inner + ")";
            case Op::Exp: return "exp(" + inner + ")";
            case Op::Sqrt: return "sqrt(" + inner + ")";
            case Op::PowInt: return "(" + inner + ")^" + std::to_string(u->k);
            default: break;
        }
    }
    const auto& b = std::get<Node::Binary>(n.data);
    std::string lx = RealExpr(b.x).describe(), ly = RealExpr(b.y).describe();
    const char* op = b.op == Op::Add ? "+" : b.op == Op::Sub ? "-" : b.op == Op::Mul ? "*" : "/";
    return "(" + lx + " " + op + " " + ly + ")";
}

RealExpr ExprFactory::binary(Op op, const RealExpr& x, const RealExpr& y) {
    return RealExpr(std::make_shared<RealExpr::Node>(
        RealExpr::Node{RealExpr::Node::Binary{op, x.node_, y.node_}}));
}

RealExpr ExprFactory::unary(Op op, RealExpr x, long k) {
    return RealExpr(std::make_shared<RealExpr::Node>(
        RealExpr::Node{RealExpr::Node::Unary{op, std::move(x.node_), k}}));
}

RealExpr operator+(const RealExpr& x, const RealExpr& y) { return ExprFactory::binary(Op::Add, x, y); }
RealExpr operator-(const RealExpr& x, const RealExpr& y) { return ExprFactory::binary(Op::Sub, x, y); }
RealExpr operator*(const RealExpr& x, const RealExpr& y) { return ExprFactory::binary(Op::Mul, x, y); }
RealExpr operator/(const RealExpr& x, const RealExpr& y) { return ExprFactory::binary(Op::Div, x, y); }
RealExpr operator-(const RealExpr& x) { return ExprFactory::unary(Op::Neg, x, 0); }

RealExpr RealExpr::ln(RealExpr x) { return ExprFactory::unary(Op::Ln, std::move(x), 0); }
RealExpr RealExpr::exp(RealExpr x) { return ExprFactory::unary(Op::Exp, std::move(x), 0); }
RealExpr RealExpr::sqrt(RealExpr x) { return ExprFactory::unary(Op::Sqrt, std::move(x), 0); }
RealExpr RealExpr::abs(RealExpr x) { return ExprFactory::unary(Op::Abs, std::move(x), 0); }
RealExpr RealExpr::pow_int(RealExpr x, long k) { return ExprFactory::unary(Op::PowInt, std::move(x), k); }

Sign certified_sign(const RealExpr& expr, const PrecConfig& cfg) {
    for (mpfr_prec_t prec = cfg.start;; prec *= 2) {
        Sign s = sign_of(expr.eval(prec));
        if (s != Sign::Unknown) return s;
        if (prec >= cfg.ceiling)
            throw precision_error("sign of " + expr.describe() +
                                  " undecided at precision ceiling " + std::to_string(cfg.ceiling));
    }
}

Sign certified_compare(const RealExpr& a, const RealExpr& b, const PrecConfig& cfg) {
    return certified_sign(a - b, cfg);
}

bool certify_less(const RealExpr& a, const RealExpr& b, const PrecConfig& cfg) {
    return certified_compare(a, b, cfg) == Sign::Negative;
}

mpz_class certified_floor(const RealExpr& expr, const PrecConfig& cfg) {
    for (mpfr_prec_t prec = cfg.start;; prec *= 2) {
        if (auto f = expr.eval(prec).floor_certified()) return *f;
        if (prec >= cfg.ceiling)
            throw precision_error("floor of " + expr.describe() +
                                  " undecided at precision ceiling " + std::to_string(cfg.ceiling));
    }
}

}  // namespace lucaspow
