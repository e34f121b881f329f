#include "kcp/relations.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "kcp/paper.hpp"

namespace kcp {

namespace {

// Recursive-descent evaluator for bracket expressions; evaluates on the fly,
// no intermediate tree.
class BracketEval {
public:
    BracketEval(std::string_view text, const SymbolTable& symbols)
        : text_(text), symbols_(symbols) {}

    RationalForm run() {
        RationalForm v = expr();
        skip();
        if (pos_ != text_.size())
            throw SyntaxError("trailing input in bracket expression", 1,
                              static_cast<int>(pos_) + 1);
        return v;
    }

private:
    RationalForm expr() {
        RationalForm v = term();
        while (true) {
            skip();
            if (peek() == '+') {
                ++pos_;
                v += term();
            } else if (peek() == '-') {
                ++pos_;
                v -= term();
            } else {
                return v;
            }
        }
    }

    RationalForm term() {
        RationalForm v = factor();
        while (true) {
            skip();
            if (peek() == '*') {
                ++pos_;
                v *= factor();
            } else {
                return v;
            }
        }
    }

    RationalForm factor() {
        skip();
        if (peek() == '-') {
            ++pos_;
            return -factor();
        }
        return power();
    }

    RationalForm power() {
        RationalForm v = atom();
        skip();
        if (peek() == '^') {
            ++pos_;
            skip();
            size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (start == pos_)
                throw SyntaxError("expected integer exponent", 1, static_cast<int>(pos_) + 1);
            long e = std::stol(std::string(text_.substr(start, pos_ - start)));
            return pow(v, e);
        }
        return v;
    }

    RationalForm atom() {
        skip();
        char c = peek();
        if (c == '{') {
            ++pos_;
            RationalForm lhs = expr();
            expect(',');
            RationalForm rhs = expr();
            expect('}');
            return poisson_bracket(lhs, rhs);
        }
        if (c == '(') {
            ++pos_;
            RationalForm v = expr();
            expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            return RationalForm::constant(
                scalar_from_string(std::string(text_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (auto it = symbols_.find(name); it != symbols_.end()) return it->second;
            if (auto v = var_from_name(name); v && is_param_var(*v))
                return RationalForm::variable(*v);
            throw UnknownGenerator("unknown name in bracket expression: " + name);
        }
        throw SyntaxError("expected '{', '(', a number or a name", 1,
                          static_cast<int>(pos_) + 1);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    void expect(char c) {
        skip();
        if (peek() != c)
            throw SyntaxError(std::string("expected '") + c + "'", 1,
                              static_cast<int>(pos_) + 1);
        ++pos_;
    }

    std::string_view text_;
    const SymbolTable& symbols_;
    size_t pos_ = 0;
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

RationalForm eval_bracket_expr(std::string_view text, const SymbolTable& symbols) {
    return BracketEval(text, symbols).run();
}

std::vector<RelationSpec> parse_relation_table(std::istream& in) {
    std::vector<RelationSpec> out;
    RelationSpec current;
    bool open = false;
    auto flush = [&] {
        if (!open) return;
        if (current.name.empty() || current.lhs.empty() || current.rhs.empty())
            throw Error("relation stanza needs name:, lhs: and rhs: (near '" + current.name + "')");
        out.push_back(std::move(current));
        current = {};
        open = false;
    };

    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) {
            flush();
            continue;
        }
        size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw Error("expected `field: value` in relation table (line " +
                        std::to_string(lineno) + ")");
        std::string field = trim(line.substr(0, colon));
        std::string value = trim(line.substr(colon + 1));
        open = true;
        if (field == "name") current.name = value;
        else if (field == "lhs") current.lhs = value;
        else if (field == "rhs") current.rhs = value;
        else if (field == "source") current.source = value;
        else
            throw Error("unknown relation field `" + field + "` (line " + std::to_string(lineno) +
                        ")");
    }
    flush();
    return out;
}

std::vector<RelationSpec> parse_relation_table_text(const std::string& text) {
    std::istringstream in(text);
    return parse_relation_table(in);
}

std::vector<RelationSpec> load_relation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open relation table: " + path);
    return parse_relation_table(in);
}

std::vector<RelationSpec> default_relations() {
    return parse_relation_table_text(paper::relation_table());
}

} // namespace kcp
