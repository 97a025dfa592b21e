#include "ffk/slp.hpp"

#include <cassert>
#include <map>
#include <sstream>

#include "ffk/rings.hpp"

namespace ffk {

unsigned Slp::time() const {
    unsigned t = 0;
    for (auto& nd : nodes)
        if (nd.op != Op::Input && nd.op != Op::Const) ++t;
    return t;
}

unsigned Slp::space() const {
    std::vector<size_t> last_use(nodes.size(), 0);
    for (size_t i = 0; i < nodes.size(); ++i) {
        const auto& nd = nodes[i];
        if (nd.op != Op::Input && nd.op != Op::Const) {
            last_use[nd.a] = std::max(last_use[nd.a], i);
            last_use[nd.b] = std::max(last_use[nd.b], i);
        }
    }
    for (auto o : outputs) last_use[o] = nodes.size();
    unsigned live = 0, peak = 0;
    std::vector<unsigned> deaths(nodes.size() + 2, 0);
    for (size_t i = 0; i < nodes.size(); ++i) ++deaths[std::min(last_use[i] + 1, nodes.size() + 1)];
    for (size_t i = 0; i < nodes.size(); ++i) {
        ++live;
        peak = std::max(peak, live);
        live -= deaths[i + 1];
    }
    return peak;
}

namespace {

struct Token {
    enum Kind { Ident, Int, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    std::string text;
    int line, col;
};

[[noreturn]] void syntax_error(const std::string& msg, int line, int col) {
    raise(Err::SyntaxError, msg + " at line " + std::to_string(line) + ", column " +
                                std::to_string(col));
}

std::vector<Token> lex_expr(const std::string& s, int line, int col0) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        int col = col0 + (int)i;
        if (c == ' ' || c == '\t') { ++i; continue; }
        if (c == '#') break;
        if (isdigit((unsigned char)c)) {
            size_t j = i;
            while (j < s.size() && isdigit((unsigned char)s[j])) ++j;
            out.push_back({Token::Int, s.substr(i, j - i), line, col});
            i = j;
            continue;
        }
        if (isalpha((unsigned char)c) || c == '_') {
            size_t j = i;
            while (j < s.size() && (isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
            out.push_back({Token::Ident, s.substr(i, j - i), line, col});
            i = j;
            continue;
        }
        Token::Kind k;
        switch (c) {
            case '+': k = Token::Plus; break;
            case '-': k = Token::Minus; break;
            case '*': k = Token::Star; break;
            case '/': k = Token::Slash; break;
            case '^': k = Token::Caret; break;
            case '(': k = Token::LParen; break;
            case ')': k = Token::RParen; break;
            default: syntax_error(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back({k, std::string(1, c), line, col});
        ++i;
    }
    out.push_back({Token::End, "", line, col0 + (int)s.size()});
    return out;
}

// DAG builder with structural hashing and constant folding
class Builder {
public:
    Builder(Field f, const std::vector<std::string>& vars) : f_(std::move(f)), vars_(vars) {}

    struct Info {
        std::uint32_t id;
        long deg;
        bool is_const;
        FieldElement cval;
    };

    Info input(const std::string& name, int line, int col) {
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) {
                Key k{1, (std::uint32_t)i, 0, {}};
                auto it = memo_.find(k);
                if (it != memo_.end()) return infos_[it->second];
                std::uint32_t id = push({Slp::Op::Input, (std::uint32_t)i, 0, FieldElement()});
                return remember(k, {id, 1, false, FieldElement::zero(f_)});
            }
        raise(Err::UnknownVariable, name + " at line " + std::to_string(line) + ", column " +
                                        std::to_string(col));
    }

    Info constant(const FieldElement& v) {
        Key k{2, 0, 0, v.coeffs()};
        auto it = memo_.find(k);
        if (it != memo_.end()) return infos_[it->second];
        std::uint32_t id = push({Slp::Op::Const, 0, 0, v});
        return remember(k, {id, 0, true, v});
    }

    Info binary(Slp::Op op, const Info& a, const Info& b, int line, int col) {
        if (a.is_const && b.is_const) {
            FieldElement v = FieldElement::zero(f_);
            switch (op) {
                case Slp::Op::Add: v = a.cval + b.cval; break;
                case Slp::Op::Sub: v = a.cval - b.cval; break;
                case Slp::Op::Mul: v = a.cval * b.cval; break;
                case Slp::Op::Div:
                    if (b.cval.is_zero())
                        syntax_error("division by zero constant", line, col);
                    v = a.cval * invert(b.cval);
                    break;
                default: assert(false);
            }
            return constant(v);
        }
        if (op == Slp::Op::Div) {
            if (!b.is_const)
                raise(Err::NonPolynomial, "division by a non-constant at line " +
                                              std::to_string(line) + ", column " +
                                              std::to_string(col));
            if (b.cval.is_zero()) syntax_error("division by zero constant", line, col);
            return binary(Slp::Op::Mul, a, constant(invert(b.cval)), line, col);
        }
        Key k{3 + (int)op, a.id, b.id, {}};
        auto it = memo_.find(k);
        if (it != memo_.end()) return infos_[it->second];
        std::uint32_t id = push({op, a.id, b.id, FieldElement()});
        long deg = 0;
        switch (op) {
            case Slp::Op::Add:
            case Slp::Op::Sub: deg = std::max(a.deg, b.deg); break;
            case Slp::Op::Mul: deg = a.deg + b.deg; break;
            default: assert(false);
        }
        return remember(k, {id, deg, false, FieldElement::zero(f_)});
    }

    Info power(const Info& base, u64 e, int line, int col) {
        if (e == 0) return constant(FieldElement::one(f_));
        Info acc = base;
        // square-and-multiply; the memo dedups repeated squarings
        Info result = constant(FieldElement::one(f_));
        bool result_set = false;
        Info sq = base;
        u64 rest = e;
        while (rest) {
            if (rest & 1) {
                result = result_set ? binary(Slp::Op::Mul, result, sq, line, col) : sq;
                result_set = true;
            }
            rest >>= 1;
            if (rest) sq = binary(Slp::Op::Mul, sq, sq, line, col);
        }
        (void)acc;
        return result;
    }

    Slp finish(std::uint32_t out) {
        Slp s;
        s.n_vars = (unsigned)vars_.size();
        s.nodes = nodes_;
        s.outputs = {out};
        s.division_free = true;
        return s;
    }

    const Field& field() const { return f_; }

private:
    struct Key {
        int kind;
        std::uint32_t a, b;
        std::vector<u64> cv;
        bool operator<(const Key& o) const {
            if (kind != o.kind) return kind < o.kind;
            if (a != o.a) return a < o.a;
            if (b != o.b) return b < o.b;
            return cv < o.cv;
        }
    };

    std::uint32_t push(Slp::Node nd) {
        nodes_.push_back(std::move(nd));
        return (std::uint32_t)(nodes_.size() - 1);
    }
    Info remember(const Key& k, Info info) {
        memo_[k] = infos_.size();
        infos_.push_back(info);
        return info;
    }

    Field f_;
    const std::vector<std::string>& vars_;
    std::vector<Slp::Node> nodes_;
    std::map<Key, size_t> memo_;
    std::vector<Info> infos_;
};

class ExprParser {
public:
    ExprParser(const std::vector<Token>& toks, Builder& b) : t_(toks), b_(b) {}

    Builder::Info parse() {
        auto e = expr();
        expect(Token::End, "end of expression");
        return e;
    }

private:
    const Token& cur() const { return t_[pos_]; }
    void advance() { ++pos_; }
    void expect(Token::Kind k, const std::string& what) {
        if (cur().kind != k) syntax_error("expected " + what, cur().line, cur().col);
    }

    Builder::Info expr() {
        Builder::Info acc = term();
        while (cur().kind == Token::Plus || cur().kind == Token::Minus) {
            auto op = cur().kind == Token::Plus ? Slp::Op::Add : Slp::Op::Sub;
            int line = cur().line, col = cur().col;
            advance();
            acc = b_.binary(op, acc, term(), line, col);
        }
        return acc;
    }

    Builder::Info term() {
        Builder::Info acc = unary();
        while (cur().kind == Token::Star || cur().kind == Token::Slash) {
            auto op = cur().kind == Token::Star ? Slp::Op::Mul : Slp::Op::Div;
            int line = cur().line, col = cur().col;
            advance();
            acc = b_.binary(op, acc, unary(), line, col);
        }
        return acc;
    }

    Builder::Info unary() {
        if (cur().kind == Token::Minus) {
            int line = cur().line, col = cur().col;
            advance();
            auto v = unary();
            return b_.binary(Slp::Op::Sub, b_.constant(FieldElement::zero(b_.field())), v, line,
                             col);
        }
        return power();
    }

    Builder::Info power() {
        Builder::Info base = primary();
        if (cur().kind == Token::Caret) {
            int line = cur().line, col = cur().col;
            advance();
            if (cur().kind != Token::Int)
                syntax_error("exponent must be an integer literal", cur().line, cur().col);
            if (cur().text.size() > 6)
                syntax_error("exponent too large", cur().line, cur().col);
            u64 e = std::stoull(cur().text);
            if (e > 100000) syntax_error("exponent too large", cur().line, cur().col);
            advance();
            return b_.power(base, e, line, col);
        }
        return base;
    }

    Builder::Info primary() {
        const Token& t = cur();
        switch (t.kind) {
            case Token::Int: {
                advance();
                u64 v = 0;
                for (char c : t.text) v = (v * 10 + (u64)(c - '0')) % b_.field()->p;
                return b_.constant(FieldElement::from_int(b_.field(), v));
            }
            case Token::Ident: {
                advance();
                return b_.input(t.text, t.line, t.col);
            }
            case Token::LParen: {
                advance();
                auto e = expr();
                expect(Token::RParen, "')'");
                advance();
                return e;
            }
            default: syntax_error("expected a value", t.line, t.col);
        }
    }

    const std::vector<Token>& t_;
    Builder& b_;
    size_t pos_ = 0;
};

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

ParsedSystem parse_system(const std::string& text) {
    ParsedSystem ps;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_field = false, have_vars = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(raw);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "field") {
            if (have_field) syntax_error("duplicate field line", lineno, 1);
            u64 p = 0;
            unsigned k = 0;
            std::string kv;
            while (ls >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) syntax_error("expected key=value", lineno, 1);
                std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
                try {
                    if (key == "p") p = std::stoull(val);
                    else if (key == "ext") k = (unsigned)std::stoul(val);
                    else syntax_error("unknown field attribute '" + key + "'", lineno, 1);
                } catch (const std::logic_error&) {
                    syntax_error("bad number '" + val + "'", lineno, 1);
                }
            }
            if (p == 0) syntax_error("field line needs p=<prime>", lineno, 1);
            if (k == 0) k = 1;
            // modulus choice must not depend on the run seed
            Rng modulus_rng(p * 1000003ULL + k);
            ps.base = make_field(p, k, modulus_rng);
            have_field = true;
        } else if (head == "vars") {
            if (!have_field) syntax_error("vars before field line", lineno, 1);
            if (have_vars) syntax_error("duplicate vars line", lineno, 1);
            std::string v;
            while (ls >> v) {
                if (v[0] == '#') break;
                ps.var_names.push_back(v);
            }
            if (ps.var_names.empty()) syntax_error("vars line lists no variables", lineno, 1);
            have_vars = true;
        } else if (head == "poly") {
            if (!have_vars) syntax_error("poly before vars line", lineno, 1);
            std::string rest = strip(line.substr(4));
            auto toks = lex_expr(rest, lineno, 6);
            Builder b(ps.base, ps.var_names);
            ExprParser ep(toks, b);
            auto info = ep.parse();
            ps.polys.push_back(b.finish(info.id));
            ps.degrees.push_back(info.deg);
        } else {
            syntax_error("unknown directive '" + head + "'", lineno, 1);
        }
    }
    if (!have_field || !have_vars || ps.polys.empty())
        raise(Err::SyntaxError, "input needs field, vars and at least one poly line");
    return ps;
}

Slp embed_slp(const Slp& s, const FieldEmbedding& emb) {
    if (emb.is_identity()) return s;
    Slp r = s;
    for (auto& nd : r.nodes)
        if (nd.op == Slp::Op::Const) nd.cval = emb.embed(nd.cval);
    return r;
}

Slp apply_linear_change(const Slp& s, const LinearForms& forms) {
    assert(forms.square() && forms.rows() == s.n_vars);
    const size_t n = s.n_vars;
    const Matrix& inv = forms.inverse_matrix();
    const Field f = forms.shift().empty() ? Field() : forms.shift()[0].field();

    Slp r;
    r.n_vars = (unsigned)n;
    r.division_free = s.division_free;
    std::vector<std::uint32_t> y_ids(n), t_ids(n), x_ids(n);
    auto push = [&](Slp::Node nd) {
        r.nodes.push_back(std::move(nd));
        return (std::uint32_t)(r.nodes.size() - 1);
    };
    for (size_t j = 0; j < n; ++j) y_ids[j] = push({Slp::Op::Input, (std::uint32_t)j, 0, {}});
    for (size_t j = 0; j < n; ++j) {
        auto g = push({Slp::Op::Const, 0, 0, forms.shift()[j]});
        t_ids[j] = push({Slp::Op::Sub, y_ids[j], g, {}});
    }
    for (size_t i = 0; i < n; ++i) {
        std::uint32_t acc = 0;
        bool has = false;
        for (size_t j = 0; j < n; ++j) {
            if (inv[i][j].is_zero()) continue;
            auto c = push({Slp::Op::Const, 0, 0, inv[i][j]});
            auto m = push({Slp::Op::Mul, c, t_ids[j], {}});
            acc = has ? push({Slp::Op::Add, acc, m, {}}) : m;
            has = true;
        }
        if (!has) acc = push({Slp::Op::Const, 0, 0, FieldElement::zero(f)});
        x_ids[i] = acc;
    }
    // original nodes appended with inputs rerouted to the computed x_i
    std::vector<std::uint32_t> remap(s.nodes.size());
    for (size_t i = 0; i < s.nodes.size(); ++i) {
        const auto& nd = s.nodes[i];
        if (nd.op == Slp::Op::Input) {
            remap[i] = x_ids[nd.a];
        } else if (nd.op == Slp::Op::Const) {
            remap[i] = push(nd);
        } else {
            Slp::Node copy = nd;
            copy.a = remap[nd.a];
            copy.b = remap[nd.b];
            remap[i] = push(copy);
        }
    }
    for (auto o : s.outputs) r.outputs.push_back(remap[o]);
    return r;
}

Vec eval_system(const std::vector<Slp>& sys, const Vec& point) {
    assert(!point.empty());
    FieldOps ops{nullptr, point[0].field()};
    Vec out;
    out.reserve(sys.size());
    for (auto& s : sys) out.push_back(s.eval(point, ops)[0]);
    return out;
}

Matrix jacobian_at(const std::vector<Slp>& sys, const Vec& point) {
    assert(!point.empty());
    const Field& f = point[0].field();
    FieldOps base{nullptr, f};
    DualOps<FieldOps> dops{&base};
    Matrix jac(sys.size(), Vec(point.size(), FieldElement::zero(f)));
    for (size_t j = 0; j < point.size(); ++j) {
        std::vector<DualOps<FieldOps>::V> in;
        in.reserve(point.size());
        for (size_t i = 0; i < point.size(); ++i)
            in.push_back(dops.seed(point[i], i == j ? FieldElement::one(f)
                                                    : FieldElement::zero(f)));
        for (size_t i = 0; i < sys.size(); ++i) jac[i][j] = sys[i].eval(in, dops)[0].der;
    }
    return jac;
}

} // namespace ffk
