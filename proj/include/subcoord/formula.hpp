#pragma once

#include <cctype>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "discoord.hpp"

namespace subcoord {

/// Expression over the leaves A, B, C, ... built from + and ∩.
struct Expr {
    enum class Kind { Leaf, Zero, Sum, Intersect };
    Kind kind = Kind::Zero;
    std::size_t leaf = 0;
    std::shared_ptr<const Expr> lhs, rhs;

    static std::shared_ptr<const Expr> make_leaf(std::size_t i) {
        auto e = std::make_shared<Expr>();
        e->kind = Kind::Leaf;
        e->leaf = i;
        return e;
    }
    static std::shared_ptr<const Expr> make_zero() { return std::make_shared<Expr>(); }
    static std::shared_ptr<const Expr> make(Kind k, std::shared_ptr<const Expr> l,
                                            std::shared_ptr<const Expr> r) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->lhs = std::move(l);
        e->rhs = std::move(r);
        return e;
    }
};
using ExprPtr = std::shared_ptr<const Expr>;

inline Subspace evaluate(const Expr& e, const std::vector<Subspace>& leaves) {
    switch (e.kind) {
        case Expr::Kind::Leaf:
            if (e.leaf >= leaves.size())
                throw ContractViolation("formula leaf " + std::string(1, char('A' + e.leaf)) + " is not bound");
            return leaves[e.leaf];
        case Expr::Kind::Zero:
            return Subspace::zero(leaves.front().field(), leaves.front().ambient_dim());
        case Expr::Kind::Sum:
            return sum(evaluate(*e.lhs, leaves), evaluate(*e.rhs, leaves));
        case Expr::Kind::Intersect:
            return intersect(evaluate(*e.lhs, leaves), evaluate(*e.rhs, leaves));
    }
    return {};
}

inline std::string to_string(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Leaf: return std::string(1, char('A' + e.leaf));
        case Expr::Kind::Zero: return "0";
        case Expr::Kind::Sum: return "(" + to_string(*e.lhs) + "+" + to_string(*e.rhs) + ")";
        case Expr::Kind::Intersect: return "(" + to_string(*e.lhs) + "&" + to_string(*e.rhs) + ")";
    }
    return {};
}

inline std::size_t max_leaf(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Leaf: return e.leaf + 1;
        case Expr::Kind::Zero: return 0;
        default: return std::max(max_leaf(*e.lhs), max_leaf(*e.rhs));
    }
}

/// coef * dim(top mod bottom)
struct Term {
    long long coef = 1;
    ExprPtr top;
    ExprPtr bottom;  ///< Zero expression for a plain dimension
};

/// Integer combination of quotient dimensions. Text syntax:
///   2 dim((A+C)&(B+C)) - dim((A&B)+C) + dim(B&C | A)
/// '&' binds tighter than '+', juxtaposed leaves intersect (ABC = A&B&C),
/// and '|' separates the space from the subspace it is taken modulo.
struct Formula {
    std::vector<Term> terms;

    static Formula parse(const std::string& text);

    long long evaluate(const std::vector<Subspace>& leaves) const {
        long long total = 0;
        for (const Term& t : terms)
            total += t.coef * static_cast<long long>(
                                  quotient_dim(subcoord::evaluate(*t.top, leaves), subcoord::evaluate(*t.bottom, leaves)));
        return total;
    }

    std::size_t arity() const {
        std::size_t a = 0;
        for (const Term& t : terms) a = std::max({a, max_leaf(*t.top), max_leaf(*t.bottom)});
        return a;
    }

    std::string to_string() const {
        std::string s;
        for (const Term& t : terms) {
            if (!s.empty() || t.coef < 0) s += t.coef < 0 ? " - " : " + ";
            long long c = t.coef < 0 ? -t.coef : t.coef;
            if (c != 1) s += std::to_string(c) + " ";
            s += "dim(" + subcoord::to_string(*t.top);
            if (t.bottom->kind != Expr::Kind::Zero) s += " | " + subcoord::to_string(*t.bottom);
            s += ")";
        }
        return s.empty() ? "0" : s;
    }
};

namespace detail {

class FormulaParser {
public:
    explicit FormulaParser(const std::string& s) : s_(s) {}

    Formula run() {
        Formula f;
        skip();
        bool first = true;
        while (pos_ < s_.size()) {
            long long sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = get() == '-' ? -1 : 1;
                skip();
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            first = false;
            long long coef = 1;
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                coef = 0;
                while (std::isdigit(static_cast<unsigned char>(peek()))) coef = coef * 10 + (get() - '0');
                skip();
                if (peek() == '*') { get(); skip(); }
            }
            if (s_.compare(pos_, 3, "dim") != 0) fail("expected 'dim'");
            pos_ += 3;
            skip();
            expect('(');
            Term t;
            t.coef = sign * coef;
            t.top = sum_expr();
            t.bottom = Expr::make_zero();
            if (peek() == '|') {
                get();
                skip();
                t.bottom = sum_expr();
            }
            expect(')');
            f.terms.push_back(std::move(t));
        }
        if (f.terms.empty()) fail("empty formula");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(0, "formula column " + std::to_string(pos_ + 1) + ": " + why);
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return s_[pos_++]; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        get();
        skip();
    }
    bool atom_start() const {
        const char c = peek();
        return (c >= 'A' && c <= 'Z') || c == '(' || c == '0';
    }
    ExprPtr atom() {
        const char c = peek();
        if (c >= 'A' && c <= 'Z') {
            get();
            skip();
            return Expr::make_leaf(static_cast<std::size_t>(c - 'A'));
        }
        if (c == '0') {
            get();
            skip();
            return Expr::make_zero();
        }
        if (c == '(') {
            get();
            skip();
            ExprPtr e = sum_expr();
            expect(')');
            return e;
        }
        fail("expected a subspace name, '0' or '('");
    }
    ExprPtr cap_expr() {
        ExprPtr e = atom();
        while (true) {
            if (peek() == '&') {
                get();
                skip();
            } else if (!atom_start()) {
                break;
            }
            e = Expr::make(Expr::Kind::Intersect, e, atom());
        }
        return e;
    }
    ExprPtr sum_expr() {
        ExprPtr e = cap_expr();
        while (peek() == '+') {
            get();
            skip();
            e = Expr::make(Expr::Kind::Sum, e, cap_expr());
        }
        return e;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula Formula::parse(const std::string& text) { return detail::FormulaParser(text).run(); }

/// The six expressions that each equal DisCoord(A, B, C).
inline const std::vector<std::string>& discoordination_formulas() {
    static const std::vector<std::string> f{
        "dim(A&B&C) - dim(A+B+C) + dim(A+B) + dim(A+C) + dim(B+C) - dim(A) - dim(B) - dim(C)",
        "dim(C&(A+B)) - dim(C&A) - dim(C&B) + dim(A&B&C)",
        "dim((A+C)&(B+C) | C) + dim(A&B&C) - dim(A&B)",
        "dim((A+C)&(B+C)) - dim(C) + dim(A&B&C) - dim(A&B)",
        "dim((A+C)&(B+C)) - dim((A&B)+C)",
        "dim(A+B) + dim(A+C) - dim(A) - dim(A+B+C) - dim(B&C | A)",
    };
    return f;
}

inline std::vector<Subspace> counterexample_triple(Field f = Field(2)) {
    const Vector e1 = Vector::unit(f, 2, 0), e2 = Vector::unit(f, 2, 1);
    return {span(f, 2, {e1}), span(f, 2, {e2}), span(f, 2, {e1 + e2})};
}

struct BalanceResult {
    bool balanced = false;
    long long k = 0;
};

/// A three-variable formula is balanced when it vanishes on every coordinate
/// triple (e_I, e_J, e_K) with I, J, K subsets of a 3-element ground set;
/// k is its value on the counterexample triple.
inline BalanceResult balanced_check(const Formula& f) {
    if (f.arity() > 3) throw ContractViolation("balanced_check: formula uses more than three subspaces");
    const Field two(2);
    auto coord = [&](unsigned mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < 3; ++i)
            if (mask >> i & 1u) idx.push_back(i);
        return Subspace::coordinate(two, 3, idx);
    };
    BalanceResult r;
    r.balanced = true;
    for (unsigned i = 0; i < 8 && r.balanced; ++i)
        for (unsigned j = 0; j < 8 && r.balanced; ++j)
            for (unsigned k = 0; k < 8 && r.balanced; ++k)
                if (f.evaluate({coord(i), coord(j), coord(k)}) != 0) r.balanced = false;
    r.k = f.evaluate(counterexample_triple(two));
    return r;
}

inline long long balanced_eval(const Formula& f, const Subspace& a, const Subspace& b, const Subspace& c) {
    return f.evaluate({a, b, c});
}

}  // namespace subcoord
