#include "dglie/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "dglie/common.hpp"

namespace dglie {

namespace {

struct Token {
    enum Kind { Ident, Int, Sym, End } kind = End;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok_.line, tok_.col); }

private:
    std::string s_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;

    int cur() const { return pos_ < s_.size() ? static_cast<unsigned char>(s_[pos_]) : -1; }
    void bump() {
        if (cur() == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void advance() {
        while (true) {
            while (isspace(cur())) bump();
            if (cur() == '#') {
                while (cur() != -1 && cur() != '\n') bump();
                continue;
            }
            break;
        }
        tok_.line = line_;
        tok_.col = col_;
        if (cur() == -1) {
            tok_ = Token{Token::End, "", line_, col_};
            return;
        }
        if (isalpha(cur()) || cur() == '_') {
            std::string t;
            while (isalnum(cur()) || cur() == '_') {
                t.push_back(static_cast<char>(cur()));
                bump();
            }
            tok_ = Token{Token::Ident, t, tok_.line, tok_.col};
            return;
        }
        if (isdigit(cur())) {
            std::string t;
            while (isdigit(cur())) {
                t.push_back(static_cast<char>(cur()));
                bump();
            }
            tok_ = Token{Token::Int, t, tok_.line, tok_.col};
            return;
        }
        std::string sym(1, static_cast<char>(cur()));
        bump();
        tok_ = Token{Token::Sym, sym, tok_.line, tok_.col};
    }
};

bool is_sym(const Token& t, const char* s) { return t.kind == Token::Sym && t.text == s; }

ExprPtr parse_expr(Lexer& lx);

ExprPtr parse_factor(Lexer& lx) {
    Token t = lx.peek();
    if (t.kind == Token::Ident) {
        lx.next();
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Ident;
        e->name = t.text;
        e->line = t.line;
        e->col = t.col;
        return e;
    }
    if (is_sym(t, "[")) {
        lx.next();
        auto a = parse_expr(lx);
        if (!is_sym(lx.peek(), ",")) lx.fail("expected ',' in bracket");
        lx.next();
        auto b = parse_expr(lx);
        if (!is_sym(lx.peek(), "]")) lx.fail("expected ']' closing bracket");
        lx.next();
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Bracket;
        e->a = a;
        e->b = b;
        e->line = t.line;
        e->col = t.col;
        return e;
    }
    if (is_sym(t, "(")) {
        lx.next();
        auto e = parse_expr(lx);
        if (!is_sym(lx.peek(), ")")) lx.fail("expected ')'");
        lx.next();
        return e;
    }
    lx.fail("expected identifier, bracket or parenthesis");
}

ExprPtr parse_term(Lexer& lx) {
    Token t = lx.peek();
    if (t.kind == Token::Int) {
        lx.next();
        std::string num = t.text, den = "1";
        if (is_sym(lx.peek(), "/")) {
            lx.next();
            Token d = lx.peek();
            if (d.kind != Token::Int) lx.fail("expected denominator");
            lx.next();
            den = d.text;
        }
        if (!is_sym(lx.peek(), "*")) lx.fail("expected '*' after rational coefficient");
        lx.next();
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Scale;
        e->coeff = rat_parse(num + "/" + den);
        e->a = parse_factor(lx);
        e->line = t.line;
        e->col = t.col;
        return e;
    }
    return parse_factor(lx);
}

ExprPtr parse_expr(Lexer& lx) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Sum;
    e->line = lx.peek().line;
    e->col = lx.peek().col;
    int sign = 1;
    if (is_sym(lx.peek(), "-")) {
        sign = -1;
        lx.next();
    } else if (is_sym(lx.peek(), "+")) {
        lx.next();
    }
    e->summands.emplace_back(sign, parse_term(lx));
    while (is_sym(lx.peek(), "+") || is_sym(lx.peek(), "-")) {
        int s = lx.peek().text == "+" ? 1 : -1;
        lx.next();
        e->summands.emplace_back(s, parse_term(lx));
    }
    if (e->summands.size() == 1 && e->summands[0].first == 1) return e->summands[0].second;
    return e;
}

LieElement eval_expr(const ExprPtr& e, const FreeDGL& L) {
    switch (e->kind) {
        case Expr::Ident: {
            int gi = L.gen_index(e->name);
            if (gi < 0) throw ParseError("unknown identifier '" + e->name + "'", e->line, e->col);
            return L.gen_elem(gi);
        }
        case Expr::Bracket: {
            LieElement a = eval_expr(e->a, L);
            LieElement b = eval_expr(e->b, L);
            try {
                return L.bracket(a, b);
            } catch (const DegreeCapError& err) {
                throw ParseError(err.what(), e->line, e->col);
            }
        }
        case Expr::Scale:
            return lie_scale(eval_expr(e->a, L), e->coeff);
        case Expr::Sum: {
            LieElement out;
            bool started = false;
            for (auto& [sign, term] : e->summands) {
                LieElement t = eval_expr(term, L);
                if (t.is_zero()) continue;
                if (!started) {
                    out = lie_scale(t, Rat(sign));
                    started = true;
                } else {
                    if (out.degree != t.degree)
                        throw ParseError("inhomogeneous sum: degree " + std::to_string(out.degree) +
                                             " vs " + std::to_string(t.degree),
                                         term->line, term->col);
                    lie_add_scaled(out, Rat(sign), t);
                }
            }
            if (!started) return LieElement{};
            return out;
        }
    }
    throw Error("unreachable expression kind");
}

}  // namespace

DglDocument parse_dgl(const std::string& text) {
    Lexer lx(text);
    Token t = lx.peek();
    if (!(t.kind == Token::Ident && t.text == "dgl")) lx.fail("expected 'dgl'");
    lx.next();
    if (!is_sym(lx.peek(), "{")) lx.fail("expected '{'");
    lx.next();
    DglDocument doc;
    while (!is_sym(lx.peek(), "}")) {
        Token d = lx.peek();
        if (d.kind == Token::End) lx.fail("unexpected end of input, missing '}'");
        if (d.kind != Token::Ident) lx.fail("expected declaration");
        if (d.text == "gen") {
            lx.next();
            Token name = lx.peek();
            if (name.kind != Token::Ident) lx.fail("expected generator name");
            lx.next();
            if (!is_sym(lx.peek(), ":")) lx.fail("expected ':' after generator name");
            lx.next();
            Token deg = lx.peek();
            if (deg.kind != Token::Int) lx.fail("expected generator degree");
            lx.next();
            for (auto& g : doc.gens)
                if (g.name == name.text)
                    throw ParseError("duplicate generator '" + name.text + "'", name.line, name.col);
            doc.gens.push_back(Generator{name.text, std::stoi(deg.text)});
            doc.gen_locs.emplace_back(name.line, name.col);
        } else if (d.text == "d") {
            lx.next();
            Token name = lx.peek();
            if (name.kind != Token::Ident) lx.fail("expected generator name after 'd'");
            lx.next();
            if (!is_sym(lx.peek(), "=")) lx.fail("expected '=' in differential declaration");
            lx.next();
            ExprPtr e = parse_expr(lx);
            doc.diffs.emplace_back(name.text, e, name.line, name.col);
        } else if (d.text == "cap") {
            lx.next();
            Token c = lx.peek();
            if (c.kind != Token::Int) lx.fail("expected integer after 'cap'");
            lx.next();
            doc.cap = std::stoi(c.text);
        } else {
            lx.fail("unknown declaration '" + d.text + "'");
        }
    }
    lx.next();
    if (lx.peek().kind != Token::End) lx.fail("trailing input after '}'");
    return doc;
}

std::shared_ptr<FreeDGL> build_dgl(const DglDocument& doc, int cap_override) {
    int cap = cap_override > 0 ? cap_override : doc.cap;
    if (cap <= 0) {
        // default: twice the largest generator degree, enough for one bracket
        for (auto& g : doc.gens) cap = std::max(cap, 2 * g.degree);
    }
    for (size_t i = 0; i < doc.gens.size(); ++i)
        if (doc.gens[i].degree < 1)
            throw ParseError("generator '" + doc.gens[i].name + "' must have degree >= 1",
                             doc.gen_locs[i].first, doc.gen_locs[i].second);
    // Evaluate differentials against a zero-differential copy of the algebra.
    auto plain = std::make_shared<FreeDGL>(
        doc.gens, std::vector<LieElement>(doc.gens.size()), cap);
    std::vector<LieElement> diffs(doc.gens.size());
    std::vector<bool> seen(doc.gens.size(), false);
    for (auto& [name, expr, line, col] : doc.diffs) {
        int gi = plain->gen_index(name);
        if (gi < 0) throw ParseError("differential of undeclared generator '" + name + "'", line, col);
        if (seen[gi]) throw ParseError("duplicate differential for '" + name + "'", line, col);
        seen[gi] = true;
        LieElement v = eval_expr(expr, *plain);
        if (!v.is_zero() && v.degree != doc.gens[gi].degree - 1)
            throw ParseError("d " + name + " has degree " + std::to_string(v.degree) +
                                 ", expected " + std::to_string(doc.gens[gi].degree - 1),
                             line, col);
        diffs[gi] = std::move(v);
    }
    for (size_t i = 0; i < diffs.size(); ++i)
        if (diffs[i].is_zero()) diffs[i] = lie_zero(doc.gens[i].degree - 1);
    return std::make_shared<FreeDGL>(doc.gens, std::move(diffs), cap);
}

LieElement eval_expr_str(const std::string& text, const FreeDGL& L) {
    Lexer lx(text);
    ExprPtr e = parse_expr(lx);
    if (lx.peek().kind != Token::End) lx.fail("trailing input after expression");
    return eval_expr(e, L);
}

std::string serialize_dgl(const FreeDGL& L) {
    std::ostringstream os;
    os << "dgl {\n";
    os << "  cap " << L.cap() << "\n";
    for (auto& g : L.gens()) os << "  gen " << g.name << ":" << g.degree << "\n";
    for (size_t i = 0; i < L.gens().size(); ++i) {
        const LieElement& df = L.gen_diff(static_cast<int>(i));
        if (df.is_zero()) continue;
        os << "  d " << L.gens()[i].name << " = " << L.print(df) << "\n";
    }
    os << "}\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::shared_ptr<FreeDGL> load_dgl_file(const std::string& path, int cap_override) {
    return build_dgl(parse_dgl(read_file(path)), cap_override);
}

}  // namespace dglie
