#include "cgfa/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace cgfa {

namespace {

struct Token {
    enum Kind { Ident, Number, Punct, End } kind = End;
    std::string text;
    int line = 0;
    int column = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_ws();
        current_.line = line_;
        current_.column = column_;
        if (pos_ >= text_.size()) {
            current_.kind = Token::End;
            current_.text.clear();
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                consume();
            current_.kind = Token::Ident;
            current_.text = text_.substr(start, pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                consume();
            if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
                std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                consume();
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    consume();
            }
            current_.kind = Token::Number;
            current_.text = text_.substr(start, pos_ - start);
            return;
        }
        current_.kind = Token::Punct;
        current_.text = std::string(1, c);
        consume();
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') consume();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                consume();
            } else {
                break;
            }
        }
    }

    void consume() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    Token current_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    Model parse() {
        bool have_init = false;
        while (lex_.peek().kind != Token::End) {
            Token t = lex_.peek();
            if (t.kind == Token::Ident && t.text == "species") {
                parse_species();
            } else if (t.kind == Token::Ident && t.text == "init") {
                if (have_init) fail(t, "duplicate init declaration");
                parse_init();
                have_init = true;
            } else {
                fail(t, "expected 'species' or 'init'");
            }
        }
        if (!have_init) fail(lex_.peek(), "missing init declaration");
        validate();
        return std::move(model_);
    }

private:
    [[noreturn]] void fail(const Token& at, const std::string& message) {
        throw ParseError(message, at.line, at.column);
    }

    Token expect_punct(const std::string& p) {
        Token t = lex_.next();
        if (t.kind != Token::Punct || t.text != p) fail(t, "expected '" + p + "'");
        return t;
    }

    Token expect_ident() {
        Token t = lex_.next();
        if (t.kind != Token::Ident) fail(t, "expected identifier");
        return t;
    }

    void parse_species() {
        lex_.next();  // species
        Token name = expect_ident();
        if (model_.env.defines(name.text))
            fail(name, "duplicate species '" + name.text + "'");
        expect_punct("=");
        SpeciesDef def;
        def.name = name.text;
        if (lex_.peek().kind == Token::Number && lex_.peek().text == "0") {
            lex_.next();
        } else {
            def.summands.push_back(parse_prefix(def));
            while (lex_.peek().kind == Token::Punct && lex_.peek().text == "+") {
                lex_.next();
                def.summands.push_back(parse_prefix(def));
            }
        }
        model_.env.species.push_back(std::move(def));
    }

    Prefix parse_prefix(const SpeciesDef& owner) {
        Prefix prefix;
        Token t = lex_.next();
        if (t.kind == Token::Ident && t.text == "tau") {
            prefix.action.kind = ActionKind::Delay;
        } else if (t.kind == Token::Punct && t.text == "?") {
            prefix.action.kind = ActionKind::Input;
            prefix.action.channel = expect_ident().text;
        } else if (t.kind == Token::Punct && t.text == "!") {
            prefix.action.kind = ActionKind::Output;
            prefix.action.channel = expect_ident().text;
        } else {
            fail(t, "expected action ('tau', '?' or '!')");
        }
        expect_punct("(");
        prefix.action.rate = parse_rate();
        expect_punct(")");
        if (lex_.peek().kind == Token::Punct && lex_.peek().text == "@") {
            lex_.next();
            Token label = expect_ident();
            prefix.action.label = label.text;
            explicit_labels_.push_back({label.text, label.line, label.column});
        } else {
            prefix.action.label = owner.name + "#" + std::to_string(owner.summands.size());
        }
        expect_punct(".");
        prefix.product = parse_product();
        return prefix;
    }

    Rational parse_rate() {
        Token t = lex_.next();
        if (t.kind != Token::Number) fail(t, "expected rate literal");
        std::string text = t.text;
        if (lex_.peek().kind == Token::Punct && lex_.peek().text == "/") {
            lex_.next();
            Token den = lex_.next();
            if (den.kind != Token::Number || den.text.find('.') != std::string::npos)
                fail(den, "expected integer denominator");
            text += "/" + den.text;
        }
        Rational rate = parse_rational(text);
        if (rate <= 0) fail(t, "non-positive rate");
        return rate;
    }

    Multiset parse_product() {
        Multiset product;
        if (lex_.peek().kind == Token::Number && lex_.peek().text == "0") {
            lex_.next();
            return product;
        }
        Token t = expect_ident();
        product.add(t.text);
        product_refs_.push_back({t.text, t.line, t.column});
        while (lex_.peek().kind == Token::Punct && lex_.peek().text == "|") {
            lex_.next();
            Token u = expect_ident();
            product.add(u.text);
            product_refs_.push_back({u.text, u.line, u.column});
        }
        return product;
    }

    void parse_init() {
        lex_.next();  // init
        Multiset concrete;
        AbstractState abs;
        bool any_interval = false;
        while (true) {
            Token name = expect_ident();
            product_refs_.push_back({name.text, name.line, name.column});
            expect_punct(":");
            if (lex_.peek().kind == Token::Punct && lex_.peek().text == "[") {
                any_interval = true;
                abs.set(name.text, parse_interval());
            } else {
                Token n = lex_.next();
                if (n.kind != Token::Number || n.text.find('.') != std::string::npos)
                    fail(n, "expected integer count");
                std::uint64_t count = std::stoull(n.text);
                concrete.set(name.text, count);
                abs.set(name.text, Interval::exact(count));
            }
            if (lex_.peek().kind == Token::Punct && lex_.peek().text == ",")
                lex_.next();
            else
                break;
        }
        if (any_interval)
            model_.init = abs;
        else
            model_.init = concrete;
    }

    Interval parse_interval() {
        expect_punct("[");
        Token lo = lex_.next();
        if (lo.kind != Token::Number || lo.text.find('.') != std::string::npos)
            fail(lo, "expected integer lower bound");
        expect_punct(",");
        Interval iv;
        iv.lo = std::stoull(lo.text);
        Token hi = lex_.next();
        if (hi.kind == Token::Ident && hi.text == "inf") {
            iv.hi = std::nullopt;
        } else if (hi.kind == Token::Number && hi.text.find('.') == std::string::npos) {
            iv.hi = std::stoull(hi.text);
            if (*iv.hi < iv.lo) fail(hi, "empty interval");
        } else {
            fail(hi, "expected integer or 'inf' upper bound");
        }
        expect_punct("]");
        return iv;
    }

    void validate() {
        std::map<Label, std::pair<int, int>> seen;
        for (const auto& ref : explicit_labels_) {
            auto [it, inserted] = seen.emplace(ref.name, std::make_pair(ref.line, ref.column));
            if (!inserted)
                throw ParseError("duplicate label '" + ref.name + "' (first at line " +
                                     std::to_string(it->second.first) + ")",
                                 ref.line, ref.column);
        }
        auto diags = validate_well_labeled(model_.env);
        if (!diags.empty()) throw ParseError(diags.front().message, 0, 0);
        for (const auto& ref : product_refs_) {
            if (!model_.env.defines(ref.name))
                throw ParseError("reference to undefined species '" + ref.name + "'", ref.line,
                                 ref.column);
        }
    }

    struct NameRef {
        std::string name;
        int line;
        int column;
    };

    Lexer lex_;
    Model model_;
    std::vector<NameRef> explicit_labels_;
    std::vector<NameRef> product_refs_;
};

}  // namespace

Model parse_model(const std::string& text) { return Parser(text).parse(); }

Model parse_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model(buffer.str());
}

}  // namespace cgfa
