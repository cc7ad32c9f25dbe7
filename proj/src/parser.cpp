#include "analogy/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

namespace analogy {

std::string_view to_string(Severity severity)
{
    return severity == Severity::error ? "error" : "warning";
}

std::string_view to_string(DiagnosticCode code)
{
    switch (code) {
    case DiagnosticCode::syntax: return "syntax";
    case DiagnosticCode::undeclared_predicate: return "undeclared-predicate";
    case DiagnosticCode::arity_mismatch: return "arity-mismatch";
    case DiagnosticCode::duplicate_name: return "duplicate-name";
    case DiagnosticCode::nonentity_argument: return "attribute-nonentity-arg";
    case DiagnosticCode::cycle: return "cycle";
    }
    return "syntax";
}

std::string format(const ParseDiagnostic& d)
{
    return std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + std::string(to_string(d.severity)) +
           " [" + std::string(to_string(d.code)) + "] " + d.message;
}

bool ParseResult::ok() const
{
    return std::none_of(diagnostics.begin(), diagnostics.end(),
                        [](const ParseDiagnostic& d) { return d.severity == Severity::error; });
}

const Domain* ParseResult::find(std::string_view name) const
{
    for (const Domain& d : domains)
        if (d.name() == name)
            return &d;
    return nullptr;
}

namespace {

enum class Tok { ident, integer, punct, end, bad };

struct Token {
    Tok type = Tok::end;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= src_.size()) {
                t.type = Tok::end;
                out.push_back(t);
                return out;
            }
            char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c))) {
                t.type = Tok::ident;
                while (pos_ < src_.size() && is_ident_char(src_[pos_]))
                    t.text += advance();
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                t.type = Tok::integer;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    t.text += advance();
            } else if (std::string_view("{}(),;:/").find(c) != std::string_view::npos) {
                t.type = Tok::punct;
                t.text = advance();
            } else {
                t.type = Tok::bad;
                t.text = advance();
            }
            out.push_back(std::move(t));
        }
    }

private:
    static bool is_ident_char(char c)
    {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    }

    char advance()
    {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space()
    {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct Located {
    std::string name;
    int line = 1;
    int column = 1;
};

struct TermNode {
    Located head;
    bool call = false;
    std::vector<TermNode> args;
};

struct DeclNode {
    Located name;
    PredicateKind kind = PredicateKind::relation;
    long arity = 0;
    Located arity_pos;
};

struct BlockNode {
    Located name;
    std::vector<DeclNode> decls;
    std::vector<Located> entities;
    std::vector<TermNode> facts;
};

struct SyntaxError {
    ParseDiagnostic diagnostic;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ParseResult run()
    {
        ParseResult result;
        std::set<std::string, std::less<>> seen_names;
        if (peek().type == Tok::end)
            result.diagnostics.push_back(diag(peek(), DiagnosticCode::syntax, "expected at least one domain block"));
        while (peek().type != Tok::end) {
            std::size_t start = pos_;
            try {
                BlockNode block = parse_block();
                if (seen_names.contains(block.name.name)) {
                    result.diagnostics.push_back({Severity::error, block.name.line, block.name.column,
                                                  DiagnosticCode::duplicate_name,
                                                  "domain '" + block.name.name + "' is defined more than once"});
                    continue;
                }
                seen_names.insert(block.name.name);
                if (auto d = build(block, result.diagnostics))
                    result.domains.push_back(std::move(*d));
            } catch (const SyntaxError& e) {
                result.diagnostics.push_back(e.diagnostic);
                recover(start);
            }
        }
        return result;
    }

private:
    const Token& peek(std::size_t ahead = 0) const
    {
        std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }

    const Token& next()
    {
        const Token& t = peek();
        if (pos_ < toks_.size() - 1)
            ++pos_;
        return t;
    }

    static bool is_punct(const Token& t, char c) { return t.type == Tok::punct && t.text[0] == c; }
    static bool is_word(const Token& t, std::string_view w) { return t.type == Tok::ident && t.text == w; }

    static ParseDiagnostic diag(const Token& t, DiagnosticCode code, std::string msg)
    {
        return {Severity::error, t.line, t.column, code, std::move(msg)};
    }

    [[noreturn]] void fail(const Token& t, std::string expected)
    {
        std::string found = t.type == Tok::end ? "end of input" : "'" + t.text + "'";
        throw SyntaxError{diag(t, DiagnosticCode::syntax, "expected " + expected + ", found " + found)};
    }

    void expect_punct(char c)
    {
        if (!is_punct(peek(), c))
            fail(peek(), std::string("'") + c + "'");
        next();
    }

    Located expect_ident(std::string_view what)
    {
        const Token& t = peek();
        if (t.type != Tok::ident)
            fail(t, std::string(what));
        next();
        return {t.text, t.line, t.column};
    }

    // Skip past the closing brace of the block that failed to parse.
    void recover(std::size_t start)
    {
        if (pos_ == start)
            next();
        while (peek().type != Tok::end && !is_punct(peek(), '}')) {
            if (is_word(peek(), "domain") && peek(1).type == Tok::ident && is_punct(peek(2), '{'))
                return;
            next();
        }
        if (is_punct(peek(), '}'))
            next();
    }

    static std::optional<PredicateKind> kind_word(const Token& t)
    {
        if (t.type != Tok::ident)
            return std::nullopt;
        if (t.text == "attribute")
            return PredicateKind::attribute;
        if (t.text == "function")
            return PredicateKind::function;
        if (t.text == "relation")
            return PredicateKind::relation;
        return std::nullopt;
    }

    BlockNode parse_block()
    {
        if (!is_word(peek(), "domain"))
            fail(peek(), "'domain'");
        next();
        BlockNode block;
        block.name = expect_ident("domain name");
        expect_punct('{');
        while (!is_punct(peek(), '}')) {
            const Token& t = peek();
            if (is_word(t, "entities") && is_punct(peek(1), ':')) {
                next();
                next();
                block.entities.push_back(expect_ident("entity name"));
                while (is_punct(peek(), ',')) {
                    next();
                    block.entities.push_back(expect_ident("entity name"));
                }
                expect_punct(';');
            } else if (is_word(t, "facts") && is_punct(peek(1), ':')) {
                next();
                next();
                do {
                    block.facts.push_back(parse_call());
                    expect_punct(';');
                } while (peek().type == Tok::ident && is_punct(peek(1), '('));
            } else if (auto kind = kind_word(t); kind && peek(1).type == Tok::ident) {
                next();
                DeclNode decl;
                decl.kind = *kind;
                decl.name = expect_ident("predicate name");
                expect_punct('/');
                const Token& n = peek();
                if (n.type != Tok::integer)
                    fail(n, "arity");
                next();
                decl.arity_pos = {n.text, n.line, n.column};
                decl.arity = n.text.size() > 6 ? 1000000 : std::stol(n.text);
                expect_punct(';');
                block.decls.push_back(std::move(decl));
            } else {
                fail(t, "a section ('entities:', 'facts:', or a predicate declaration) or '}'");
            }
        }
        next();
        return block;
    }

    TermNode parse_call()
    {
        TermNode node;
        node.head = expect_ident("predicate name");
        node.call = true;
        expect_punct('(');
        node.args.push_back(parse_arg());
        while (is_punct(peek(), ',')) {
            next();
            node.args.push_back(parse_arg());
        }
        expect_punct(')');
        return node;
    }

    TermNode parse_arg()
    {
        if (peek().type == Tok::ident && is_punct(peek(1), '('))
            return parse_call();
        TermNode node;
        node.head = expect_ident("argument");
        return node;
    }

    static std::optional<Domain> build(const BlockNode& block, std::vector<ParseDiagnostic>& diags)
    {
        std::size_t errors_before = diags.size();
        auto error = [&](const Located& at, DiagnosticCode code, std::string msg) {
            diags.push_back({Severity::error, at.line, at.column, code, std::move(msg)});
        };

        DomainBuilder builder(block.name.name);
        std::map<std::string, PredicateDecl, std::less<>> decls;
        for (const DeclNode& d : block.decls) {
            if (decls.contains(d.name.name)) {
                error(d.name, DiagnosticCode::duplicate_name, "predicate '" + d.name.name + "' is declared twice");
                continue;
            }
            if (d.arity < 1) {
                error(d.arity_pos, DiagnosticCode::syntax, "arity must be a positive integer");
                continue;
            }
            if (d.kind == PredicateKind::attribute && d.arity != 1) {
                error(d.arity_pos, DiagnosticCode::arity_mismatch,
                      "attribute '" + d.name.name + "' must have arity 1");
                continue;
            }
            PredicateDecl decl{d.name.name, d.kind, static_cast<int>(d.arity)};
            decls.emplace(decl.name, decl);
            builder.declare(decl);
        }

        std::set<std::string, std::less<>> listed;
        for (const Located& e : block.entities) {
            if (listed.contains(e.name) || decls.contains(e.name)) {
                error(e, DiagnosticCode::duplicate_name, "name '" + e.name + "' is already in use");
                continue;
            }
            listed.insert(e.name);
            builder.entity(e.name);
        }

        // Returns nullopt after recording a diagnostic.
        auto term = [&](auto&& self, const TermNode& node) -> std::optional<ElementId> {
            if (!node.call) {
                if (decls.contains(node.head.name)) {
                    error(node.head, DiagnosticCode::syntax,
                          "predicate '" + node.head.name + "' used without arguments");
                    return std::nullopt;
                }
                return builder.entity(node.head.name);
            }
            auto it = decls.find(node.head.name);
            if (it == decls.end()) {
                error(node.head, DiagnosticCode::undeclared_predicate,
                      "predicate '" + node.head.name + "' is not declared");
                return std::nullopt;
            }
            const PredicateDecl& decl = it->second;
            if (static_cast<int>(node.args.size()) != decl.arity) {
                error(node.head, DiagnosticCode::arity_mismatch,
                      std::string(to_string(decl.kind)) + " '" + decl.name + "' expects " +
                          std::to_string(decl.arity) + " argument(s), got " + std::to_string(node.args.size()));
                return std::nullopt;
            }
            std::vector<ElementId> args;
            bool ok = true;
            for (const TermNode& a : node.args) {
                if (a.call) {
                    auto ad = decls.find(a.head.name);
                    bool arg_is_function = ad != decls.end() && ad->second.kind == PredicateKind::function;
                    if (decl.kind == PredicateKind::attribute) {
                        error(a.head, DiagnosticCode::nonentity_argument,
                              "attribute '" + decl.name + "' takes only entity arguments");
                        ok = false;
                        continue;
                    }
                    if (decl.kind == PredicateKind::function && ad != decls.end() && !arg_is_function) {
                        error(a.head, DiagnosticCode::nonentity_argument,
                              "function '" + decl.name + "' takes only entities or function terms");
                        ok = false;
                        continue;
                    }
                }
                auto id = self(self, a);
                if (!id)
                    ok = false;
                else
                    args.push_back(*id);
            }
            if (!ok)
                return std::nullopt;
            return builder.expression(decl.name, args);
        };

        for (const TermNode& f : block.facts) {
            if (auto id = term(term, f))
                builder.fact(*id);
        }

        if (diags.size() != errors_before)
            return std::nullopt;
        return std::move(builder).build();
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

ParseResult parse_corpus(std::string_view source)
{
    Lexer lexer(source);
    Parser parser(lexer.run());
    return parser.run();
}

std::string serialize(const Domain& domain)
{
    std::string out = "domain " + domain.name() + " {\n";
    if (!domain.entities().empty()) {
        out += "  entities: ";
        bool first = true;
        for (ElementId e : domain.entities()) {
            if (!first)
                out += ", ";
            first = false;
            out += domain.element(e).name;
        }
        out += ";\n";
    }
    std::vector<PredicateDecl> decls(domain.declarations().begin(), domain.declarations().end());
    std::sort(decls.begin(), decls.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    for (const PredicateDecl& d : decls)
        out += "  " + std::string(to_string(d.kind)) + " " + d.name + "/" + std::to_string(d.arity) + ";\n";
    if (!domain.facts().empty()) {
        out += "  facts:\n";
        for (ElementId f : domain.facts())
            out += "    " + domain.render(f) + ";\n";
    }
    out += "}\n";
    return out;
}

std::string serialize(std::span<const Domain> domains)
{
    std::string out;
    for (std::size_t i = 0; i < domains.size(); ++i) {
        if (i)
            out += "\n";
        out += serialize(domains[i]);
    }
    return out;
}

}  // namespace analogy
