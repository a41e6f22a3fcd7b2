#include "ipb/expression.hpp"

#include <cctype>
#include <cmath>
#include <vector>

namespace ipb {

struct GambleExpression::Node {
    enum class Kind { Number, Ident, Add, Sub, Mul, Div, Neg, Pow, Abs, IndLeq, IndGeq };
    Kind kind;
    double number = 0.0;
    std::string name;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using Node = GambleExpression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_node(Node::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Leq, Geq, End };
    Kind kind;
    double number = 0.0;
    std::string text;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        Token t;
        t.pos = i_;
        if (i_ >= s_.size()) {
            t.kind = Token::Kind::End;
            return t;
        }
        const char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t end = 0;
            try {
                t.number = std::stod(s_.substr(i_), &end);
            } catch (const std::exception&) {
                raise(Errc::parse_error, "bad number at position " + std::to_string(i_));
            }
            t.kind = Token::Kind::Number;
            i_ += end;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) {
                ++j;
            }
            t.kind = Token::Kind::Ident;
            t.text = s_.substr(i_, j - i_);
            i_ = j;
            return t;
        }
        if (c == '<' || c == '>') {
            if (i_ + 1 >= s_.size() || s_[i_ + 1] != '=') {
                raise(Errc::parse_error,
                      "expected '<=' or '>=' at position " + std::to_string(i_));
            }
            t.kind = c == '<' ? Token::Kind::Leq : Token::Kind::Geq;
            i_ += 2;
            return t;
        }
        switch (c) {
            case '+': t.kind = Token::Kind::Plus; break;
            case '-': t.kind = Token::Kind::Minus; break;
            case '*': t.kind = Token::Kind::Star; break;
            case '/': t.kind = Token::Kind::Slash; break;
            case '^': t.kind = Token::Kind::Caret; break;
            case '(': t.kind = Token::Kind::LParen; break;
            case ')': t.kind = Token::Kind::RParen; break;
            default:
                raise(Errc::parse_error, std::string("unexpected character '") + c +
                                             "' at position " + std::to_string(i_));
        }
        ++i_;
        return t;
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

class Parser {
public:
    Parser(const std::string& text, const AssessmentDocument& doc)
        : lexer_(text), doc_(doc) {
        advance();
    }

    NodePtr parse() {
        NodePtr e = expr();
        expect(Token::Kind::End, "end of input");
        return e;
    }

private:
    void advance() { tok_ = lexer_.next(); }

    void expect(Token::Kind kind, const char* what) {
        if (tok_.kind != kind) {
            raise(Errc::parse_error,
                  std::string("expected ") + what + " at position " + std::to_string(tok_.pos));
        }
    }

    NodePtr expr() {
        NodePtr left = term();
        while (tok_.kind == Token::Kind::Plus || tok_.kind == Token::Kind::Minus) {
            const bool plus = tok_.kind == Token::Kind::Plus;
            advance();
            left = make_node(plus ? Node::Kind::Add : Node::Kind::Sub, left, term());
        }
        return left;
    }

    NodePtr term() {
        NodePtr left = unary();
        while (tok_.kind == Token::Kind::Star || tok_.kind == Token::Kind::Slash) {
            const bool mul = tok_.kind == Token::Kind::Star;
            advance();
            left = make_node(mul ? Node::Kind::Mul : Node::Kind::Div, left, unary());
        }
        return left;
    }

    NodePtr unary() {
        if (tok_.kind == Token::Kind::Minus) {
            advance();
            return make_node(Node::Kind::Neg, unary());
        }
        return power();
    }

    NodePtr power() {
        NodePtr left = atom();
        while (tok_.kind == Token::Kind::Caret) {
            advance();
            NodePtr exponent;
            if (tok_.kind == Token::Kind::Minus) { // allow x^-2
                advance();
                exponent = make_node(Node::Kind::Neg, atom());
            } else {
                exponent = atom();
            }
            left = make_node(Node::Kind::Pow, left, exponent);
        }
        return left;
    }

    NodePtr atom() {
        if (tok_.kind == Token::Kind::Number) {
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Number;
            n->number = tok_.number;
            advance();
            return n;
        }
        if (tok_.kind == Token::Kind::LParen) {
            advance();
            NodePtr e = expr();
            expect(Token::Kind::RParen, "')'");
            advance();
            return e;
        }
        if (tok_.kind == Token::Kind::Ident) {
            const std::string name = tok_.text;
            const std::size_t pos = tok_.pos;
            advance();
            if (name == "abs" && tok_.kind == Token::Kind::LParen) {
                advance();
                NodePtr e = expr();
                expect(Token::Kind::RParen, "')'");
                advance();
                return make_node(Node::Kind::Abs, e);
            }
            if (name == "ind" && tok_.kind == Token::Kind::LParen) {
                advance();
                NodePtr lhs = expr();
                if (tok_.kind != Token::Kind::Leq && tok_.kind != Token::Kind::Geq) {
                    raise(Errc::parse_error, "expected '<=' or '>=' inside ind(...) at position " +
                                                 std::to_string(tok_.pos));
                }
                const bool leq = tok_.kind == Token::Kind::Leq;
                advance();
                NodePtr rhs = expr();
                expect(Token::Kind::RParen, "')'");
                advance();
                return make_node(leq ? Node::Kind::IndLeq : Node::Kind::IndGeq, lhs, rhs);
            }
            if (doc_.find_gamble(name) == nullptr) {
                raise(Errc::unknown_identifier,
                      "unknown gamble '" + name + "' at position " + std::to_string(pos));
            }
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Ident;
            n->name = name;
            return n;
        }
        raise(Errc::parse_error,
              "expected a value at position " + std::to_string(tok_.pos));
    }

    Lexer lexer_;
    const AssessmentDocument& doc_;
    Token tok_;
};

Gamble eval_node(const Node& node, const AssessmentDocument& doc, const PartitionPtr& part) {
    using K = Node::Kind;
    switch (node.kind) {
        case K::Number:
            return constant_gamble(part, node.number);
        case K::Ident: {
            const std::vector<double>* v = doc.find_gamble(node.name);
            if (v == nullptr) {
                raise(Errc::unknown_identifier, "unknown gamble '" + node.name + "'");
            }
            return Gamble(part, *v);
        }
        case K::Add:
            return eval_node(*node.lhs, doc, part) + eval_node(*node.rhs, doc, part);
        case K::Sub:
            return eval_node(*node.lhs, doc, part) - eval_node(*node.rhs, doc, part);
        case K::Mul:
            return eval_node(*node.lhs, doc, part) * eval_node(*node.rhs, doc, part);
        case K::Div: {
            const Gamble num = eval_node(*node.lhs, doc, part);
            const Gamble den = eval_node(*node.rhs, doc, part);
            std::vector<double> out(num.size());
            for (std::size_t i = 0; i < out.size(); ++i) {
                if (den[i] == 0.0) {
                    raise(Errc::evaluation_error, "division by zero on atom '" + part->atom(i) + "'");
                }
                out[i] = num[i] / den[i];
            }
            return Gamble(part, std::move(out));
        }
        case K::Neg:
            return -eval_node(*node.lhs, doc, part);
        case K::Pow: {
            const Gamble base = eval_node(*node.lhs, doc, part);
            const Gamble expg = eval_node(*node.rhs, doc, part);
            double e = expg[0];
            for (std::size_t i = 1; i < expg.size(); ++i) {
                if (expg[i] != e) {
                    raise(Errc::evaluation_error, "exponent must be constant across atoms");
                }
            }
            const bool integral = e == std::floor(e);
            std::vector<double> out(base.size());
            for (std::size_t i = 0; i < out.size(); ++i) {
                if (!integral && base[i] < 0.0) {
                    raise(Errc::evaluation_error,
                          "non-integer power of a negative value on atom '" + part->atom(i) + "'");
                }
                out[i] = std::pow(base[i], e);
            }
            return Gamble(part, std::move(out));
        }
        case K::Abs:
            return eval_node(*node.lhs, doc, part).map([](double v) { return std::abs(v); });
        case K::IndLeq:
        case K::IndGeq: {
            const Gamble lhs = eval_node(*node.lhs, doc, part);
            const Gamble rhs = eval_node(*node.rhs, doc, part);
            std::vector<double> out(lhs.size());
            for (std::size_t i = 0; i < out.size(); ++i) {
                const bool in = node.kind == K::IndLeq ? lhs[i] <= rhs[i] : lhs[i] >= rhs[i];
                out[i] = in ? 1.0 : 0.0;
            }
            return Gamble(part, std::move(out));
        }
    }
    raise(Errc::evaluation_error, "corrupt expression tree");
}

} // namespace

GambleExpression::GambleExpression(std::shared_ptr<const Node> root, std::string text)
    : root_(std::move(root)), text_(std::move(text)) {}

Gamble GambleExpression::evaluate(const AssessmentDocument& doc) const {
    return eval_node(*root_, doc, doc.partition());
}

GambleExpression parse_expression(const std::string& text, const AssessmentDocument& doc) {
    Parser parser(text, doc);
    return GambleExpression(parser.parse(), text);
}

Gamble evaluate_expression(const std::string& text, const AssessmentDocument& doc) {
    return parse_expression(text, doc).evaluate(doc);
}

} // namespace ipb
